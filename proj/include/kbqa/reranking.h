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

#ifndef KBQA_RERANKING_H_
#define KBQA_RERANKING_H_

#include <set>
#include <span>
#include <string>
#include <vector>

#include "kbqa/kb_store.h"
#include "kbqa/matcher.h"
#include "kbqa/query_graph.h"
#include "kbqa/ranking.h"

namespace kbqa {

// Answer-type tokens v_1..v_n of a graph: the notable types of its entity
// answers, deduplicated, sorted by label and concatenated.
struct TypeSequence {
  std::vector<std::string> tokens;
};

TypeSequence AnswerTypeSequence(const KnowledgeBase &kb, const QueryGraph &graph);
TypeSequence AnswerTypeSequence(const KnowledgeBase &kb, const std::set<Node> &answers);

struct RerankModel {
  LinearHead seq_head;
  LinearHead type_head;
  std::vector<double> validation_f1;
  int best_epoch = 0;

  static RerankModel Zero(int dimension) {
    return RerankModel{LinearHead::Zero(dimension), LinearHead::Zero(dimension), {}, 0};
  }
};

// s'' for a question and answer-type sequence.
double TypeScore(const RerankModel &model, const Question &question,
                 const TypeSequence &types, const PairEncoder &encoder);

// s* = s' + s''.
inline double CombineScores(double rank_score, double type_score) {
  return rank_score + type_score;
}

// The top-n candidate positions of one question under the rank head.
struct RerankList {
  size_t question = 0;
  std::vector<size_t> candidates;
};

std::vector<RerankList> BuildRerankTraining(const LinearHead &rank_head,
                                            std::span<const LabeledQuestion> questions,
                                            int n);

// Reranked order of a list (positions into `list.candidates`), using cached
// features.
std::vector<size_t> RerankOrder(const RerankModel &model, const LabeledQuestion &question,
                                const RerankList &list);

// Average top-1 F1 after reranking; `lists` covers every question.
double RerankTopOneF1(const RerankModel &model,
                      std::span<const LabeledQuestion> questions,
                      std::span<const RerankList> lists);

// Joint gradient descent of both heads on the top-n lists, one step per
// list. With config.use_type_feature off the type head stays zero.
RerankModel TrainReranker(std::span<const LabeledQuestion> train_questions,
                          std::span<const RerankList> train,
                          std::span<const LabeledQuestion> valid_questions,
                          std::span<const RerankList> valid,
                          const TrainConfig &config, int dimension);

// Rescores the top-n with s* and sorts, ties by incoming position. The
// output is a permutation of the input.
std::vector<ScoredCandidate> Rerank(const RerankModel &model,
                                    std::span<const ScoredCandidate> top_n,
                                    const Question &question, const KnowledgeBase &kb,
                                    const PairEncoder &encoder);

}  // namespace kbqa

#endif  // KBQA_RERANKING_H_
