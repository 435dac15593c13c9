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

#include "kbqa/reranking.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "kbqa/error.h"
#include "kbqa/kernels.h"

namespace kbqa {

TypeSequence AnswerTypeSequence(const KnowledgeBase &kb, const std::set<Node> &answers) {
  std::set<TypeLabel> labels;
  for (const Node &node : answers) {
    if (const auto *entity = std::get_if<EntityId>(&node)) {
      for (const TypeLabel &t : kb.NotableTypes(*entity)) labels.insert(t);
    }
  }
  TypeSequence seq;
  for (const TypeLabel &t : labels) {
    for (std::string &token : t.tokens()) seq.tokens.push_back(std::move(token));
  }
  return seq;
}

TypeSequence AnswerTypeSequence(const KnowledgeBase &kb, const QueryGraph &graph) {
  return AnswerTypeSequence(kb, Execute(kb, graph));
}

double TypeScore(const RerankModel &model, const Question &question,
                 const TypeSequence &types, const PairEncoder &encoder) {
  return LinearScore(encoder.Encode(PairInput::ForTokens(question, types.tokens)),
                     model.type_head);
}

std::vector<RerankList> BuildRerankTraining(const LinearHead &rank_head,
                                            std::span<const LabeledQuestion> questions,
                                            int n) {
  if (n < 1) throw ContractError("top-n requires n >= 1");
  std::vector<RerankList> lists;
  lists.reserve(questions.size());
  for (size_t q = 0; q < questions.size(); ++q) {
    RerankList list{q, RankOrder(rank_head, questions[q])};
    if (list.candidates.size() > static_cast<size_t>(n)) list.candidates.resize(n);
    lists.push_back(std::move(list));
  }
  return lists;
}

std::vector<size_t> RerankOrder(const RerankModel &model, const LabeledQuestion &question,
                                const RerankList &list) {
  std::vector<double> scores;
  std::vector<int> positions;
  for (size_t i = 0; i < list.candidates.size(); ++i) {
    const auto &c = question.candidates[list.candidates[i]];
    scores.push_back(CombineScores(LinearScore(c.features, model.seq_head),
                                   LinearScore(c.type_features, model.type_head)));
    positions.push_back(static_cast<int>(i));
  }
  return OrderByScore(scores, positions);
}

double RerankTopOneF1(const RerankModel &model,
                      std::span<const LabeledQuestion> questions,
                      std::span<const RerankList> lists) {
  if (questions.empty()) return 0;
  double total = 0;
  for (const RerankList &list : lists) {
    if (list.candidates.empty()) continue;
    const auto &question = questions[list.question];
    size_t best = list.candidates[RerankOrder(model, question, list).front()];
    total += question.candidates[best].f1;
  }
  return total / questions.size();
}

RerankModel TrainReranker(std::span<const LabeledQuestion> train_questions,
                          std::span<const RerankList> train,
                          std::span<const LabeledQuestion> valid_questions,
                          std::span<const RerankList> valid,
                          const TrainConfig &config, int dimension) {
  struct Batch {
    std::vector<FeatureVector> seq, type;
    std::vector<int> labels;
  };
  std::vector<Batch> batches;
  for (const RerankList &list : train) {
    if (list.candidates.empty()) continue;
    Batch batch;
    for (size_t i : list.candidates) {
      const auto &c = train_questions[list.question].candidates[i];
      batch.seq.push_back(c.features);
      batch.type.push_back(c.type_features);
      batch.labels.push_back(c.label);
    }
    batches.push_back(std::move(batch));
  }
  if (batches.empty()) throw TrainingError("empty rerank training data");

  RerankModel model = RerankModel::Zero(dimension);
  model.validation_f1.push_back(RerankTopOneF1(model, valid_questions, valid));
  if (config.epochs <= 0) return model;

  RerankModel current = model;
  double best = -1;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::vector<size_t> order(batches.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(config.seed * 1000003ULL + static_cast<uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t b : order) {
      const Batch &batch = batches[b];
      auto grad = kernels::JointLossGradient(batch.seq, batch.type, batch.labels,
                                             current.seq_head, current.type_head);
      auto step = [&](LinearHead &head, const LossGradient &g) {
        for (size_t i = 0; i < head.weights.size(); ++i) {
          if (!std::isfinite(g.weights[i])) throw TrainingError("non-finite gradient");
          head.weights[i] -= config.learning_rate * g.weights[i];
        }
        if (!std::isfinite(g.bias)) throw TrainingError("non-finite gradient");
        head.bias -= config.learning_rate * g.bias;
      };
      step(current.seq_head, grad.seq);
      if (config.use_type_feature) step(current.type_head, grad.type);
    }
    double f1 = RerankTopOneF1(current, valid_questions, valid);
    model.validation_f1.push_back(f1);
    if (f1 > best) {
      best = f1;
      model.seq_head = current.seq_head;
      model.type_head = current.type_head;
      model.best_epoch = epoch;
    }
  }
  return model;
}

std::vector<ScoredCandidate> Rerank(const RerankModel &model,
                                    std::span<const ScoredCandidate> top_n,
                                    const Question &question, const KnowledgeBase &kb,
                                    const PairEncoder &encoder) {
  std::vector<PairInput> seq_pairs, type_pairs;
  for (const ScoredCandidate &c : top_n) {
    seq_pairs.push_back(PairInput::ForGraph(question, c.sequence));
    type_pairs.push_back(
        PairInput::ForTokens(question, AnswerTypeSequence(kb, c.graph).tokens));
  }
  std::vector<FeatureVector> f = encoder.EncodeBatch(seq_pairs);
  std::vector<FeatureVector> f_t = encoder.EncodeBatch(type_pairs);

  std::vector<ScoredCandidate> rescored(top_n.begin(), top_n.end());
  std::vector<double> combined;
  std::vector<int> positions;
  for (size_t i = 0; i < rescored.size(); ++i) {
    rescored[i].rank_score = LinearScore(f[i], model.seq_head);
    rescored[i].type_score = LinearScore(f_t[i], model.type_head);
    rescored[i].combined_score =
        CombineScores(rescored[i].rank_score, *rescored[i].type_score);
    combined.push_back(*rescored[i].combined_score);
    positions.push_back(static_cast<int>(i));
  }
  std::vector<ScoredCandidate> out;
  out.reserve(rescored.size());
  for (size_t i : OrderByScore(combined, positions)) out.push_back(std::move(rescored[i]));
  return out;
}

}  // namespace kbqa
