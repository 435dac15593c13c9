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

#include "kbqa/ranking.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "kbqa/error.h"
#include "kbqa/kernels.h"
#include "kbqa/metrics.h"

namespace kbqa {

namespace {

uint64_t MixSeed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(a), static_cast<uint32_t>(b)};
  uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<uint64_t>(out[0]) << 32) | out[1];
}

std::vector<int> Provenances(const LabeledQuestion &question) {
  std::vector<int> out;
  out.reserve(question.candidates.size());
  for (const auto &c : question.candidates) out.push_back(c.graph.provenance);
  return out;
}

}  // namespace

std::vector<std::string> RenderAnswers(const std::set<Node> &answers,
                                       const NameTable &names) {
  std::vector<std::string> out;
  out.reserve(answers.size());
  for (const Node &node : answers) out.push_back(names.Render(node));
  return out;
}

void ApplyPositivityRule(std::span<LabeledCandidate> candidates) {
  bool any = false;
  for (auto &c : candidates) {
    c.label = c.f1 >= 0.5 ? 1 : 0;
    any = any || c.label == 1;
  }
  if (any) return;
  LabeledCandidate *best = nullptr;
  for (auto &c : candidates) {
    if (c.f1 > 0 && (best == nullptr || c.f1 > best->f1)) best = &c;
  }
  if (best != nullptr) best->label = 1;
}

std::vector<LabeledCandidate> LabelCandidates(const CandidateSet &candidates,
                                              std::span<const std::string> gold,
                                              const KnowledgeBase &kb,
                                              const NameTable &names) {
  std::vector<LabeledCandidate> labeled;
  labeled.reserve(candidates.graphs.size());
  for (const QueryGraph &graph : candidates.graphs) {
    LabeledCandidate c;
    c.graph = graph;
    c.sequence = Serialize(graph, names);
    c.answers = RenderAnswers(Execute(kb, graph), names);
    c.f1 = QuestionPrf(c.answers, gold).f1;
    labeled.push_back(std::move(c));
  }
  ApplyPositivityRule(labeled);
  return labeled;
}

std::vector<TrainingGroup> SampleGroups(std::span<const LabeledCandidate> labeled,
                                        int negatives_per_positive, uint64_t seed) {
  if (negatives_per_positive < 1) {
    throw ContractError("negatives_per_positive must be >= 1");
  }
  std::vector<size_t> positives, negatives;
  for (size_t i = 0; i < labeled.size(); ++i) {
    (labeled[i].label == 1 ? positives : negatives).push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<TrainingGroup> groups;
  for (size_t p : positives) {
    TrainingGroup group;
    group.positive = p;
    std::sample(negatives.begin(), negatives.end(), std::back_inserter(group.negatives),
                negatives_per_positive, rng);
    groups.push_back(std::move(group));
  }
  return groups;
}

std::vector<size_t> OrderByScore(std::span<const double> scores,
                                 std::span<const int> tiebreak) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (tiebreak[a] != tiebreak[b]) return tiebreak[a] < tiebreak[b];
    return a < b;
  });
  return order;
}

std::vector<size_t> RankOrder(const LinearHead &head, const LabeledQuestion &question) {
  std::vector<FeatureVector> features;
  features.reserve(question.candidates.size());
  for (const auto &c : question.candidates) features.push_back(c.features);
  std::vector<double> scores = kernels::ScoreBatchSerial(features, head);
  return OrderByScore(scores, Provenances(question));
}

double TopOneF1(const LinearHead &head, std::span<const LabeledQuestion> questions) {
  if (questions.empty()) return 0;
  double total = 0;
  for (const auto &q : questions) {
    if (q.candidates.empty()) continue;
    total += q.candidates[RankOrder(head, q).front()].f1;
  }
  return total / questions.size();
}

RankModel TrainRanker(std::span<const LabeledQuestion> train,
                      std::span<const LabeledQuestion> valid,
                      const TrainConfig &config, int dimension) {
  if (train.empty()) throw TrainingError("empty training set");
  RankModel model;
  model.head = LinearHead::Zero(dimension);
  model.validation_f1.push_back(TopOneF1(model.head, valid));
  if (config.epochs <= 0) return model;

  LinearHead head = model.head;
  double best = -1;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    struct Batch {
      std::vector<FeatureVector> features;
      std::vector<int> labels;
    };
    std::vector<Batch> batches;
    for (size_t q = 0; q < train.size(); ++q) {
      const auto &candidates = train[q].candidates;
      auto groups = SampleGroups(candidates, config.negatives_per_positive,
                                 MixSeed(config.seed, epoch, q));
      for (const TrainingGroup &g : groups) {
        Batch batch;
        batch.features.push_back(candidates[g.positive].features);
        batch.labels.push_back(1);
        for (size_t n : g.negatives) {
          batch.features.push_back(candidates[n].features);
          batch.labels.push_back(0);
        }
        batches.push_back(std::move(batch));
      }
    }
    if (batches.empty()) throw TrainingError("training set has no positive candidates");
    std::mt19937_64 rng(MixSeed(config.seed, epoch, 0xbeef));
    std::shuffle(batches.begin(), batches.end(), rng);
    for (const Batch &batch : batches) {
      head = GradStep(head, batch.features, batch.labels, config.learning_rate);
    }
    double f1 = TopOneF1(head, valid);
    model.validation_f1.push_back(f1);
    if (f1 > best) {
      best = f1;
      model.head = head;
      model.best_epoch = epoch;
    }
  }
  return model;
}

std::vector<ScoredCandidate> RankCandidates(const LinearHead &head,
                                            const PairEncoder &encoder,
                                            const CandidateSet &candidates,
                                            const NameTable &names) {
  std::vector<QueryGraphSequence> sequences;
  std::vector<PairInput> pairs;
  std::vector<int> provenance;
  for (const QueryGraph &g : candidates.graphs) {
    sequences.push_back(Serialize(g, names));
    pairs.push_back(PairInput::ForGraph(candidates.question, sequences.back()));
    provenance.push_back(g.provenance);
  }
  std::vector<FeatureVector> features = encoder.EncodeBatch(pairs);
  std::vector<double> scores = kernels::ScoreBatch(features, head);
  std::vector<ScoredCandidate> ranked;
  for (size_t i : OrderByScore(scores, provenance)) {
    ranked.push_back(ScoredCandidate{i, candidates.graphs[i], std::move(sequences[i]),
                                     scores[i], std::nullopt, std::nullopt});
  }
  return ranked;
}

std::vector<ScoredCandidate> RankLabeled(const LinearHead &head,
                                         const LabeledQuestion &question) {
  std::vector<ScoredCandidate> ranked;
  for (size_t i : RankOrder(head, question)) {
    const auto &c = question.candidates[i];
    ranked.push_back(ScoredCandidate{i, c.graph, c.sequence,
                                     LinearScore(c.features, head), std::nullopt,
                                     std::nullopt});
  }
  return ranked;
}

std::vector<ScoredCandidate> TopN(std::span<const ScoredCandidate> ranked, int n) {
  if (n < 1) throw ContractError("top-n requires n >= 1");
  size_t count = std::min(ranked.size(), static_cast<size_t>(n));
  return std::vector<ScoredCandidate>(ranked.begin(), ranked.begin() + count);
}

}  // namespace kbqa
