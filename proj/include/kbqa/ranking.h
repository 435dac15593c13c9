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

#ifndef KBQA_RANKING_H_
#define KBQA_RANKING_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kbqa/kb_store.h"
#include "kbqa/matcher.h"
#include "kbqa/query_graph.h"

namespace kbqa {

// A generated graph with its gold comparison and cached channel features.
struct LabeledCandidate {
  QueryGraph graph;
  QueryGraphSequence sequence;
  std::vector<std::string> answers;
  std::vector<std::string> type_tokens;
  double f1 = 0;
  int label = 0;
  FeatureVector features;
  FeatureVector type_features;
};

struct LabeledQuestion {
  std::string id;
  Question question;
  std::vector<std::string> gold;
  std::vector<LabeledCandidate> candidates;
  GenerationReport report;
};

// Candidate positions forming one training group: one positive and up to N
// negatives.
struct TrainingGroup {
  size_t positive = 0;
  std::vector<size_t> negatives;
};

struct TrainConfig {
  int negatives_per_positive = 10;
  double learning_rate = 0.01;
  int epochs = 5;
  uint64_t seed = 1;
  int top_n = 10;
  // Reranking only: train the answer-type head. Off reproduces the
  // type-ablated reranker.
  bool use_type_feature = true;
};

struct RankModel {
  LinearHead head;
  // Top-1 validation F1 of the initial model (index 0) and after each epoch.
  std::vector<double> validation_f1;
  int best_epoch = 0;
};

struct ScoredCandidate {
  // Position in the list the candidate was scored from.
  size_t index = 0;
  QueryGraph graph;
  QueryGraphSequence sequence;
  double rank_score = 0;
  std::optional<double> type_score;
  std::optional<double> combined_score;
};

// Executes every candidate, scores it against `gold` and applies the
// positivity rule: label 1 iff F1 >= 0.5; when no candidate reaches 0.5,
// the first candidate with the highest positive F1 is the only positive.
std::vector<LabeledCandidate> LabelCandidates(const CandidateSet &candidates,
                                              std::span<const std::string> gold,
                                              const KnowledgeBase &kb,
                                              const NameTable &names);

// Rendered answer strings of a graph.
std::vector<std::string> RenderAnswers(const std::set<Node> &answers,
                                       const NameTable &names);

void ApplyPositivityRule(std::span<LabeledCandidate> candidates);

// For each positive (in order) draws min(N, |negatives|) negatives uniformly
// without replacement from a generator seeded with `seed`.
std::vector<TrainingGroup> SampleGroups(std::span<const LabeledCandidate> labeled,
                                        int negatives_per_positive, uint64_t seed);

// Indices sorted by score (descending), ties by `tiebreak` ascending.
std::vector<size_t> OrderByScore(std::span<const double> scores,
                                 std::span<const int> tiebreak);

// Candidate positions of a labeled question in ranking order.
std::vector<size_t> RankOrder(const LinearHead &head, const LabeledQuestion &question);

// Average over questions of the top-1 candidate's F1 (0 without candidates).
double TopOneF1(const LinearHead &head, std::span<const LabeledQuestion> questions);

// Grouped-sampling gradient descent on the rank head; returns the epoch with
// the best validation top-1 F1 (earliest on ties).
RankModel TrainRanker(std::span<const LabeledQuestion> train,
                      std::span<const LabeledQuestion> valid,
                      const TrainConfig &config, int dimension);

// Scores every graph with s' and sorts (ties by provenance).
std::vector<ScoredCandidate> RankCandidates(const LinearHead &head,
                                            const PairEncoder &encoder,
                                            const CandidateSet &candidates,
                                            const NameTable &names);

// Same over a labeled question, reusing its cached features.
std::vector<ScoredCandidate> RankLabeled(const LinearHead &head,
                                         const LabeledQuestion &question);

std::vector<ScoredCandidate> TopN(std::span<const ScoredCandidate> ranked, int n);

}  // namespace kbqa

#endif  // KBQA_RANKING_H_
