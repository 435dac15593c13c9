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


#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "kbqa/config.h"
#include "kbqa/dataset.h"
#include "kbqa/error.h"
#include "kbqa/external_scorer.h"
#include "kbqa/metrics.h"
#include "kbqa/model_io.h"
#include "kbqa/pipeline.h"
#include "temp_files.h"

using namespace kbqa;
using kbqa::testing::DataPath;
using kbqa::testing::ReadFile;
using kbqa::testing::ScratchDir;
using kbqa::testing::WriteFile;

namespace {

struct Fig1 {
  Config config = Config::Load(DataPath("fig1/config.json"));
  Resources resources = Resources::Load(config);
  std::unique_ptr<PairEncoder> encoder = MakeEncoder(config, resources);
  std::vector<LabeledQuestion> train =
      PrepareQuestions(resources, *encoder, LoadDataset(config.train));
  std::vector<LabeledQuestion> valid =
      PrepareQuestions(resources, *encoder, LoadDataset(config.valid));
  LinearHead head = TrainRanker(train, valid, config.training, encoder->dimension()).head;
};

const Fig1 &Fixture() {
  static const Fig1 fixture;
  return fixture;
}

// Independent set-based PRF used to check per-question records.
Prf OraclePrf(const std::vector<std::string> &pred, const std::vector<std::string> &gold) {
  std::set<std::string> p, g;
  for (const auto &x : pred) p.insert(NormalizeAnswer(x));
  for (const auto &x : gold) g.insert(NormalizeAnswer(x));
  double hit = 0;
  for (const auto &x : p) hit += g.count(x);
  Prf r;
  r.precision = p.empty() ? 0 : hit / p.size();
  r.recall = g.empty() ? 0 : hit / g.size();
  r.f1 = hit == 0 ? 0 : 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

}  // namespace

TEST_CASE("question prf examples") {
  std::vector<std::string> pred = {"Austin"};
  std::vector<std::string> gold = {"Austin", "Dallas"};
  Prf r = QuestionPrf(pred, gold);
  CHECK(r.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.recall == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  std::vector<std::string> other = {"Houston"};
  Prf d = QuestionPrf(other, gold);
  CHECK(d.precision == 0);
  CHECK(d.recall == 0);
  CHECK(d.f1 == 0);

  Prf p = QuestionPrf(gold, gold);
  CHECK(p.f1 == 1);

  std::vector<std::string> empty;
  CHECK(QuestionPrf(empty, gold).f1 == 0);
  CHECK(QuestionPrf(gold, empty).f1 == 0);
}

TEST_CASE("evaluate averages per-question records") {
  std::vector<std::vector<std::string>> pred = {{"a"}, {}};
  std::vector<std::vector<std::string>> gold = {{"a"}, {"b"}};
  EvalResult r = Evaluate(pred, gold);
  CHECK(r.avg_f1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.avg_precision == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.avg_recall == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(Evaluate(pred, std::span(gold).first(1)), ContractError);
  CHECK(Evaluate({}, {}).avg_f1 == 0);
}

TEST_CASE("evaluate matches oracle and is permutation invariant") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    const int count = 1 + rng() % 10;
    std::vector<std::vector<std::string>> pred(count), gold(count);
    for (int q = 0; q < count; ++q) {
      for (const auto &x : pool) {
        if (rng() % 2) pred[q].push_back(x);
        if (rng() % 3 == 0) gold[q].push_back(x);
      }
    }
    EvalResult r = Evaluate(pred, gold);
    double p = 0, rc = 0, f = 0;
    for (int q = 0; q < count; ++q) {
      Prf o = OraclePrf(pred[q], gold[q]);
      CHECK(std::abs(r.records[q].precision - o.precision) < 1e-12);
      CHECK(std::abs(r.records[q].recall - o.recall) < 1e-12);
      CHECK(std::abs(r.records[q].f1 - o.f1) < 1e-12);
      p += o.precision;
      rc += o.recall;
      f += o.f1;
    }
    CHECK(std::abs(r.avg_precision - p / count) < 1e-12);
    CHECK(std::abs(r.avg_recall - rc / count) < 1e-12);
    CHECK(std::abs(r.avg_f1 - f / count) < 1e-12);

    std::vector<size_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<std::string>> pred2, gold2;
    for (size_t i : perm) {
      pred2.push_back(pred[i]);
      gold2.push_back(gold[i]);
    }
    CHECK(std::abs(Evaluate(pred2, gold2).avg_f1 - r.avg_f1) < 1e-9);
  }
}

TEST_CASE("oracle curve is monotone and plateaus at the full oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> ranked(1 + rng() % 8);
    size_t longest = 0;
    for (auto &list : ranked) {
      list.resize(rng() % 12);
      for (double &f : list) f = rng() % 3 ? 0.0 : unit(rng);
      longest = std::max(longest, list.size());
    }
    auto curve = OracleCurve(ranked, static_cast<int>(longest) + 3);
    for (size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].oracle_f1 >= curve[i - 1].oracle_f1);
    }
    CHECK(curve.back().oracle_f1 == doctest::Approx(FullOracle(ranked)).epsilon(1e-12));
  }
  CHECK(OracleCurve({}, 0).empty());
}

TEST_CASE("dataset io") {
  CHECK(LoadDataset(WriteFile("empty.jsonl", "")).empty());
  auto one = LoadDataset(
      WriteFile("one.jsonl", R"({"id":"q1","question":"who","answers":["A","B"]})" "\n"));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == QAPair{"q1", "who", {"A", "B"}});

  std::vector<QAPair> pairs = {{"x", "what is \"quoted\"", {}}, {"y", "ünïcode", {"1", "2"}}};
  std::string path = (ScratchDir() / "round.jsonl").string();
  SaveDataset(path, pairs);
  CHECK(LoadDataset(path) == pairs);

  std::string bad = WriteFile(
      "bad.jsonl", R"({"id":"q1","question":"who","answers":[]})" "\n\n" R"({"id":3})" "\n");
  try {
    LoadDataset(bad);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(LoadDataset((ScratchDir() / "missing.jsonl").string()), LoadError);
}

TEST_CASE("model files round trip bit-exactly") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0, 3);
  LinearHead head = LinearHead::Zero(8);
  for (double &w : head.weights) w = normal(rng);
  head.bias = normal(rng);
  RerankModel model{head, LinearHead::Zero(8), {}, 0};
  for (double &w : model.type_head.weights) w = normal(rng);
  model.type_head.bias = -1.0 / 3.0;

  std::string rank_path = (ScratchDir() / "rank.json").string();
  std::string rerank_path = (ScratchDir() / "rerank.json").string();
  SaveRankModel(rank_path, head);
  SaveRerankModel(rerank_path, model);
  LinearHead loaded = LoadRankModel(rank_path);
  RerankModel loaded_rr = LoadRerankModel(rerank_path);
  CHECK(loaded == head);
  CHECK(loaded_rr.seq_head == model.seq_head);
  CHECK(loaded_rr.type_head == model.type_head);
  for (int i = 0; i < 100; ++i) {
    FeatureVector f(8);
    for (double &x : f) x = normal(rng);
    CHECK(LinearScore(f, loaded) == LinearScore(f, head));
    CHECK(LinearScore(f, loaded_rr.type_head) == LinearScore(f, model.type_head));
  }

  CHECK_THROWS_AS(LoadRankModel(WriteFile("corrupt.json", "{\"dimension\": 2, \"weig")),
                  LoadError);
  CHECK_THROWS_AS(
      LoadRankModel(WriteFile("short.json", R"({"dimension":3,"weights":[1,2],"bias":0})")),
      LoadError);
  CHECK_THROWS_AS(LoadRankModel(WriteFile(
                      "version.json",
                      R"({"version":99,"dimension":1,"weights":[1],"bias":0})")),
                  LoadError);
  CHECK_THROWS_AS(LoadRerankModel(rank_path), LoadError);
  CHECK_THROWS_AS(LoadRankModel((ScratchDir() / "nope.json").string()), LoadError);
}

TEST_CASE("config resolution") {
  nlohmann::json json = {{"kb_triples", "kb/t.tsv"},
                         {"lexicon", "/abs/lex.tsv"},
                         {"epochs", 3},
                         {"learning_rate", 0.5},
                         {"external_scorer", "python3 s.py"}};
  Config c = Config::FromJson(json, "/base");
  CHECK(c.kb_triples == "/base/kb/t.tsv");
  CHECK(c.lexicon == "/abs/lex.tsv");
  CHECK(c.names.empty());
  CHECK(c.training.epochs == 3);
  CHECK(c.training.learning_rate == 0.5);
  CHECK(c.external_scorer == "python3 s.py");
  CHECK(c.training.seed == TrainConfig{}.seed);

  CHECK_THROWS_AS(Config::FromJson(nlohmann::json::array(), ""), LoadError);
  CHECK_THROWS_AS(Config::FromJson({{"train", 3}}, ""), LoadError);
  CHECK_THROWS_AS(Config::FromJson({{"epochs", "many"}}, ""), LoadError);
  CHECK_THROWS_AS(Config::Load(WriteFile("bad_config.json", "{ nope")), LoadError);

  Config fig1 = Config::Load(DataPath("fig1/config.json"));
  CHECK(fig1.kb_triples == DataPath("fig1/triples.tsv"));
  CHECK(fig1.training.epochs == 30);
}

TEST_CASE("external scorer protocol over streams") {
  Question q = Question::FromText("who is the president");
  std::vector<PairInput> pairs = {PairInput::ForTokens(q, {"a"}),
                                  PairInput::ForTokens(q, {"b"}),
                                  PairInput::ForTokens(q, {"c"})};
  {
    std::ostringstream requests;
    std::istringstream responses(
        "{\"id\":\"2\",\"score\":3.5}\n{\"id\":\"0\",\"score\":-1}\n\n{\"id\":\"1\",\"score\":0.25}\n");
    auto scores = ScoreOverStreams(pairs, requests, responses);
    CHECK(scores == std::vector<double>{-1, 0.25, 3.5});
    std::istringstream sent(requests.str());
    std::string line;
    int count = 0;
    while (std::getline(sent, line)) {
      auto j = nlohmann::json::parse(line);
      CHECK(j["id"] == std::to_string(count));
      CHECK(j["question"] == "who is the president");
      ++count;
    }
    CHECK(count == 3);
  }
  {
    std::ostringstream requests;
    std::istringstream responses("{\"id\":\"zz\",\"score\":1}\n");
    CHECK_THROWS_AS(ScoreOverStreams(pairs, requests, responses), Error);
  }
  {
    std::ostringstream requests;
    std::istringstream responses("{\"id\":\"0\",\"score\":1}\n{\"id\":\"0\",\"score\":1}\n");
    CHECK_THROWS_AS(ScoreOverStreams(pairs, requests, responses), Error);
  }
  {
    std::ostringstream requests;
    std::istringstream responses("{\"id\":\"0\",\"score\":1}\n");
    CHECK_THROWS_AS(ScoreOverStreams(pairs, requests, responses), Error);
  }
  {
    std::ostringstream requests;
    std::istringstream responses("not json\n");
    CHECK_THROWS_AS(ScoreOverStreams(pairs, requests, responses), Error);
  }
}

TEST_CASE("external scorer subprocess") {
  Question q = Question::FromText("who is the president of the us");
  std::vector<PairInput> pairs = {PairInput::ForTokens(q, {"president", "us"}),
                                  PairInput::ForTokens(q, {"capital"}),
                                  PairInput::ForTokens(q, {"who", "is", "the"})};
  {
    ExternalScorerEncoder encoder(KBQA_FAKE_SCORER);
    CHECK(encoder.dimension() == 2);
    CHECK_FALSE(encoder.thread_safe());
    auto features = encoder.EncodeBatch(pairs);
    REQUIRE(features.size() == 3);
    CHECK(features[0] == FeatureVector{2, 1});
    CHECK(features[1] == FeatureVector{0, 1});
    CHECK(features[2] == FeatureVector{3, 1});
    CHECK(encoder.Encode(pairs[0]) == FeatureVector{2, 1});
  }
  {
    ExternalScorerEncoder encoder(std::string(KBQA_FAKE_SCORER) + " --bad-id");
    CHECK_THROWS_AS(encoder.EncodeBatch(pairs), Error);
  }
}

TEST_CASE("external scorer drives the pipeline") {
  Config config = Config::Load(DataPath("fig1/config.json"));
  config.external_scorer = KBQA_FAKE_SCORER;
  Resources resources = Resources::Load(config);
  auto encoder = MakeEncoder(config, resources);
  CHECK(encoder->dimension() == 2);
  auto questions = PrepareQuestions(resources, *encoder, LoadDataset(config.test));
  REQUIRE(questions.size() == 1);
  for (const auto &c : questions[0].candidates) {
    REQUIRE(c.features.size() == 2);
    CHECK(c.features[1] == 1);
  }
}

TEST_CASE("fig1 end to end") {
  const Fig1 &f = Fixture();
  AnswerResult r = Answer("who is the highest president of the us after 2000", f.resources,
                          *f.encoder, f.head, nullptr, f.config.training.top_n);
  CHECK(r.answers == std::vector<std::string>{"Carl Dunn"});
  CHECK(r.trace.contains("chosen"));
  CHECK(r.trace["top_n"].size() <= static_cast<size_t>(f.config.training.top_n));

  // Top-n of one leaves the reranker nothing to reorder.
  RerankModel model = RerankModel::Zero(f.encoder->dimension());
  model.type_head.bias = 5;
  for (const auto &text : {"who is the highest president of the us after 2000",
                           "what is the capital of texas"}) {
    AnswerResult ranked = Answer(text, f.resources, *f.encoder, f.head, nullptr, 1);
    AnswerResult reranked = Answer(text, f.resources, *f.encoder, f.head, &model, 1);
    CHECK(ranked.answers == reranked.answers);
  }
}

TEST_CASE("unlinkable question yields no answers with a reason") {
  const Fig1 &f = Fixture();
  AnswerResult r = Answer("zzz qqq", f.resources, *f.encoder, f.head, nullptr, 10);
  CHECK(r.answers.empty());
  CHECK(r.nodes.empty());
  REQUIRE(r.trace.contains("reason"));
  CHECK_FALSE(r.trace["reason"].get<std::string>().empty());
  CHECK_NOTHROW(Answer("", f.resources, *f.encoder, f.head, nullptr, 10));
}

TEST_CASE("prepared evaluation agrees with answer") {
  const Fig1 &f = Fixture();
  for (const auto &q : f.train) {
    AnswerResult r = Answer(q.question.raw, f.resources, *f.encoder, f.head, nullptr, 10);
    auto predicted = PredictAnswers(std::span(&q, 1), f.head, nullptr, 10);
    std::set<std::string> a(r.answers.begin(), r.answers.end());
    std::set<std::string> b(predicted[0].begin(), predicted[0].end());
    CHECK(a == b);
  }
  auto serial = PrepareQuestionsSerial(f.resources, *f.encoder, LoadDataset(f.config.train));
  REQUIRE(serial.size() == f.train.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].candidates.size() == f.train[i].candidates.size());
    for (size_t j = 0; j < serial[i].candidates.size(); ++j) {
      CHECK(serial[i].candidates[j].features == f.train[i].candidates[j].features);
      CHECK(serial[i].candidates[j].f1 == f.train[i].candidates[j].f1);
    }
  }
}

TEST_CASE("fig1 oracle curve plateaus at the labeling oracle") {
  const Fig1 &f = Fixture();
  auto ranked = RankedF1(f.train, f.head);
  size_t longest = 0;
  for (const auto &l : ranked) longest = std::max(longest, l.size());
  auto curve = OracleCurve(ranked, static_cast<int>(longest));
  for (size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].oracle_f1 >= curve[i - 1].oracle_f1);
  }
  CHECK(curve.back().oracle_f1 == doctest::Approx(LabelingOracle(f.train)).epsilon(1e-12));
  std::string csv = OracleCurveCsv(curve);
  CHECK(csv.rfind("n,oracle_f1\n1,", 0) == 0);
}

TEST_CASE("eval csv layout") {
  const Fig1 &f = Fixture();
  EvalResult r = EvaluatePrepared(f.train, f.head, nullptr, 10);
  std::string csv = EvalCsv(f.train, r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "id,precision,recall,f1");
  size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == f.train.size() + 1);
  CHECK(csv.find("\naverage,") != std::string::npos);
}

TEST_CASE("command line smoke test") {
  const std::string model = (ScratchDir() / "cli_rank.json").string();
  const std::string out = (ScratchDir() / "cli_out.txt").string();
  const std::string base =
      std::string(KBQA_CLI) + " --config " + DataPath("fig1/config.json") + " ";
  REQUIRE(std::system((base + "train-rank --out " + model + " 2>/dev/null").c_str()) == 0);
  std::string cmd = base + "answer \"who is the highest president of the us after 2000\"" +
                    " --rank-model " + model + " > " + out + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(ReadFile(out) == "Carl Dunn\n");
  int status = std::system((base + "eval --rank-model /nonexistent 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(status) != 0);
}
