// Copyright 2026 The KBQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <random>

#include "doctest.h"
#include "kbqa/error.h"
#include "kbqa/pipeline.h"
#include "kbqa/reranking.h"
#include "temp_files.h"

using namespace kbqa;
using kbqa::testing::DataPath;

namespace {

LabeledCandidate Candidate(int provenance, int label, FeatureVector seq, FeatureVector type) {
  LabeledCandidate c;
  c.graph.provenance = provenance;
  c.f1 = label;
  c.label = label;
  c.features = std::move(seq);
  c.type_features = std::move(type);
  return c;
}

RerankList AllOf(size_t question, size_t n) {
  RerankList list{question, {}};
  for (size_t i = 0; i < n; ++i) list.candidates.push_back(i);
  return list;
}

KnowledgeBase StarWarsKb() {
  return KnowledgeBase(
      {{EntityId{"m.star_wars"}, RelationId{"media.princess_leia_in"}, EntityId{"m.star_wars_film"}},
       {EntityId{"m.star_wars"}, RelationId{"film.starring"}, EntityId{"m.carrie_fisher"}}},
      {{EntityId{"m.carrie_fisher"}, TypeLabel("person sign")},
       {EntityId{"m.carrie_fisher"}, TypeLabel("tv actor")},
       {EntityId{"m.star_wars_film"}, TypeLabel("award nominated work")}});
}

}  // namespace

TEST_CASE("answer type sequences") {
  KnowledgeBase kb = StarWarsKb();
  std::set<Node> carrie = {EntityId{"m.carrie_fisher"}};
  CHECK(AnswerTypeSequence(kb, carrie).tokens ==
        std::vector<std::string>{"person", "sign", "tv", "actor"});
  CHECK(AnswerTypeSequence(kb, std::set<Node>{}).tokens.empty());
  KnowledgeBase shared({}, {{EntityId{"a"}, TypeLabel("city")},
                            {EntityId{"b"}, TypeLabel("city")},
                            {EntityId{"b"}, TypeLabel("capital")}});
  CHECK(AnswerTypeSequence(shared, std::set<Node>{EntityId{"a"}, EntityId{"b"}}).tokens ==
        std::vector<std::string>{"capital", "city"});
  CHECK(AnswerTypeSequence(shared, std::set<Node>{NumberLiteral{3}}).tokens.empty());
  QueryGraph g{MainPath{EntityId{"m.star_wars"}, {RelationId{"film.starring"}}}, {}, {}, {}, {}, 0};
  CHECK(AnswerTypeSequence(kb, g).tokens.size() == 4);
}

TEST_CASE("type score contracts") {
  WordEmbeddings emb(2);
  emb.Add("who", {1, 0});
  emb.Add("actor", {1, 0.5});
  BaselineEncoder encoder(emb);
  Question q = Question::FromText("who is it");
  RerankModel zero = RerankModel::Zero(kBaselineDimension);
  CHECK(TypeScore(zero, q, TypeSequence{{"actor"}}, encoder) == 0.0);

  RerankModel model = RerankModel::Zero(kBaselineDimension);
  for (int i = 0; i < kBaselineDimension; ++i) model.type_head.weights[i] = 0.3 * (i + 1);
  model.type_head.bias = -0.2;
  // Empty type sequence: features (1)-(4) vanish, (5) = 1, (8) = 1.
  double empty = TypeScore(model, q, TypeSequence{}, encoder);
  CHECK(empty == doctest::Approx(-0.2 + 0.3 * 5 + 0.3 * 8).epsilon(1e-12));

  // Hand computation for t = [actor]: q mean (1/3, 0), t mean (1, 0.5).
  double cosine = 1.0 / std::sqrt(1.25);
  double jaccard = 0.0, coverage = 0.0, seq_coverage = 0.0, length = 2.0 / 4.0;
  double want = -0.2 + 0.3 * cosine + 0.6 * jaccard + 0.9 * coverage + 1.2 * seq_coverage +
                1.5 * length + 2.4;
  CHECK(TypeScore(model, q, TypeSequence{{"actor"}}, encoder) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("combine scores") {
  CHECK(CombineScores(0, 0) == 0);
  CHECK(CombineScores(1.5, -0.5) == 1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 100; ++i) {
    double a = u(rng), b = u(rng);
    CHECK(CombineScores(a, b) == CombineScores(b, a));
  }
}

TEST_CASE("rerank training lists keep ranked prefixes") {
  std::vector<LabeledQuestion> qs(2);
  for (int i = 0; i < 12; ++i) {
    // Feature 0 ranks candidate i at position i; candidate 2 is the positive.
    qs[0].candidates.push_back(Candidate(i, i == 2, {1.0 - 0.05 * i}, {0.0}));
  }
  for (int i = 0; i < 4; ++i) qs[1].candidates.push_back(Candidate(i, i == 0, {1.0 - 0.1 * i}, {0.0}));
  LinearHead head{{1.0}, 0.0};
  auto lists = BuildRerankTraining(head, qs, 10);
  REQUIRE(lists.size() == 2);
  CHECK(lists[0].candidates.size() == 10);
  CHECK(std::find(lists[0].candidates.begin(), lists[0].candidates.end(), 2) !=
        lists[0].candidates.end());
  CHECK(lists[1].candidates.size() == 4);
  size_t total = 0;
  for (const auto &l : lists) total += l.candidates.size();
  CHECK(total == std::min<size_t>(10, 12) + std::min<size_t>(10, 4));

  auto single = BuildRerankTraining(head, qs, 1);
  CHECK(single[1].candidates == std::vector<size_t>{0});
  CHECK(qs[1].candidates[single[1].candidates[0]].label == 1);
  auto all_negative = BuildRerankTraining(head, qs, 2);
  CHECK(all_negative[0].candidates.size() == 2);
  CHECK_THROWS_AS(BuildRerankTraining(head, qs, 0), ContractError);
}

TEST_CASE("zero type features leave the type weights at zero") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<LabeledQuestion> qs(10);
  for (auto &q : qs) {
    for (int i = 0; i < 6; ++i) {
      q.candidates.push_back(Candidate(i, i == 0, {u(rng), u(rng), 1.0}, {0.0, 0.0, 0.0}));
    }
  }
  std::vector<RerankList> lists;
  for (size_t q = 0; q < qs.size(); ++q) lists.push_back(AllOf(q, 6));
  TrainConfig config;
  config.epochs = 5;
  config.learning_rate = 0.3;
  RerankModel model = TrainReranker(qs, lists, qs, lists, config, 3);
  for (double w : model.type_head.weights) CHECK(std::abs(w) <= 1e-9);
  CHECK_THROWS_AS(TrainReranker(qs, {}, qs, lists, config, 3), TrainingError);
}

TEST_CASE("answer type separates positives where sequence features cannot") {
  // Mirrored sequence features: no single seq head ranks both positives
  // first (the positive sits second, so ties lose). Type feature 0 marks
  // the positive in both questions.
  std::vector<LabeledQuestion> qs(2);
  qs[0].candidates = {Candidate(0, 0, {0, 1, 1}, {0, 0, 1}), Candidate(1, 1, {1, 0, 1}, {1, 0, 1})};
  qs[1].candidates = {Candidate(0, 0, {1, 0, 1}, {0, 0, 1}), Candidate(1, 1, {0, 1, 1}, {1, 0, 1})};
  std::vector<RerankList> lists = {AllOf(0, 2), AllOf(1, 2)};
  TrainConfig config;
  config.epochs = 50;
  config.learning_rate = 0.5;
  RerankModel full = TrainReranker(qs, lists, qs, lists, config, 3);
  for (size_t q = 0; q < 2; ++q) {
    CHECK(qs[q].candidates[lists[q].candidates[RerankOrder(full, qs[q], lists[q]).front()]].label == 1);
  }

  // Exhaustive check over a grid of seq-only heads: none gets both right.
  for (double a = -2; a <= 2; a += 0.25) {
    for (double b = -2; b <= 2; b += 0.25) {
      RerankModel seq_only = RerankModel::Zero(3);
      seq_only.seq_head.weights = {a, b, 0};
      int right = 0;
      for (size_t q = 0; q < 2; ++q) {
        right += qs[q].candidates[RerankOrder(seq_only, qs[q], lists[q]).front()].label;
      }
      CHECK(right < 2);
    }
  }
  config.use_type_feature = false;
  RerankModel base = TrainReranker(qs, lists, qs, lists, config, 3);
  CHECK(base.type_head == LinearHead::Zero(3));
  CHECK(RerankTopOneF1(base, qs, lists) < RerankTopOneF1(full, qs, lists));
}

TEST_CASE("reranker training is deterministic") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<LabeledQuestion> qs(8);
  for (auto &q : qs) {
    for (int i = 0; i < 5; ++i) {
      q.candidates.push_back(Candidate(i, i == 1, {u(rng), 1.0}, {u(rng), 1.0}));
    }
  }
  std::vector<RerankList> lists;
  for (size_t q = 0; q < qs.size(); ++q) lists.push_back(AllOf(q, 5));
  TrainConfig config;
  RerankModel a = TrainReranker(qs, lists, qs, lists, config, 2);
  RerankModel b = TrainReranker(qs, lists, qs, lists, config, 2);
  CHECK(a.seq_head == b.seq_head);
  CHECK(a.type_head == b.type_head);
  CHECK(a.validation_f1 == b.validation_f1);
}

TEST_CASE("degenerate reranker reproduces the ranking order") {
  Resources res = Resources::Load(Config::Load(DataPath("fig1/config.json")));
  auto encoder = MakeEncoder(Config::Load(DataPath("fig1/config.json")), res);
  Question q = Question::FromText("who is the highest president of the us after 2000");
  CandidateSet set = GenerateCandidates(res.kb, q, res.linking, res.limits);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    LinearHead head = LinearHead::Zero(kBaselineDimension);
    for (double &w : head.weights) w = u(rng);
    auto ranked = RankCandidates(head, *encoder, set, res.names);
    RerankModel model = RerankModel::Zero(kBaselineDimension);
    model.seq_head = head;
    for (int n : {1, 10, 1000}) {
      auto top = TopN(ranked, n);
      auto reranked = Rerank(model, top, q, res.kb, *encoder);
      REQUIRE(reranked.size() == top.size());
      for (size_t i = 0; i < top.size(); ++i) {
        CHECK(reranked[i].graph.provenance == top[i].graph.provenance);
        CHECK(*reranked[i].combined_score == reranked[i].rank_score + *reranked[i].type_score);
      }
    }
  }
}

TEST_CASE("rerank output is a permutation with exact combined scores") {
  Resources res = Resources::Load(Config::Load(DataPath("fig1/config.json")));
  auto encoder = MakeEncoder(Config::Load(DataPath("fig1/config.json")), res);
  Question q = Question::FromText("who is the highest president of the us after 2000");
  CandidateSet set = GenerateCandidates(res.kb, q, res.linking, res.limits);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    RerankModel model = RerankModel::Zero(kBaselineDimension);
    for (double &w : model.seq_head.weights) w = u(rng);
    for (double &w : model.type_head.weights) w = u(rng);
    auto top = TopN(RankCandidates(model.seq_head, *encoder, set, res.names), 10);
    auto reranked = Rerank(model, top, q, res.kb, *encoder);
    std::vector<int> before, after;
    for (const auto &c : top) before.push_back(c.graph.provenance);
    for (const auto &c : reranked) {
      after.push_back(c.graph.provenance);
      CHECK(*c.combined_score == c.rank_score + *c.type_score);
    }
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);
    for (size_t i = 1; i < reranked.size(); ++i) {
      CHECK(*reranked[i - 1].combined_score >= *reranked[i].combined_score);
    }
  }
}

TEST_CASE("person-typed candidate wins after reranking with corpus-trained weights") {
  Config config = Config::Load(DataPath("synthetic/config.json"));
  Resources res = Resources::Load(config);
  auto encoder = MakeEncoder(config, res);
  auto train = PrepareQuestions(res, *encoder, LoadDataset(config.train));
  auto valid = PrepareQuestions(res, *encoder, LoadDataset(config.valid));
  RankModel rank = TrainRanker(train, valid, config.training, encoder->dimension());
  auto train_lists = BuildRerankTraining(rank.head, train, config.training.top_n);
  auto valid_lists = BuildRerankTraining(rank.head, valid, config.training.top_n);
  RerankModel model = TrainReranker(train, train_lists, valid, valid_lists, config.training,
                                    encoder->dimension());

  KnowledgeBase kb = StarWarsKb();
  NameTable names;
  names.Add(EntityId{"m.star_wars"}, "Star Wars");
  Question q = Question::FromText("who is princess leia in star wars");
  CandidateSet set;
  set.question = q;
  set.graphs.push_back(QueryGraph{MainPath{EntityId{"m.star_wars"}, {RelationId{"media.princess_leia_in"}}}, {}, {}, {}, {}, 0});
  set.graphs.push_back(QueryGraph{MainPath{EntityId{"m.star_wars"}, {RelationId{"film.starring"}}}, {}, {}, {}, {}, 1});
  auto ranked = RankCandidates(model.seq_head, *encoder, set, names);
  REQUIRE(ranked[0].graph.provenance == 0);
  CHECK(AnswerTypeSequence(kb, ranked[0].graph).tokens ==
        std::vector<std::string>{"award", "nominated", "work"});
  auto reranked = Rerank(model, ranked, q, kb, *encoder);
  CHECK(reranked[0].graph.provenance == 1);
  CHECK(AnswerTypeSequence(kb, reranked[0].graph).tokens ==
        std::vector<std::string>{"person", "sign", "tv", "actor"});
}
