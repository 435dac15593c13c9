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

#ifndef KBQA_PIPELINE_H_
#define KBQA_PIPELINE_H_

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbqa/config.h"
#include "kbqa/dataset.h"
#include "kbqa/focus_linking.h"
#include "kbqa/kb_store.h"
#include "kbqa/matcher.h"
#include "kbqa/metrics.h"
#include "kbqa/ranking.h"
#include "kbqa/reranking.h"

namespace kbqa {

// Loaded, immutable inputs shared by every question.
struct Resources {
  KnowledgeBase kb;
  NameTable names;
  LinkingResources linking;
  SearchLimits limits;

  static Resources Load(const Config &config);
};

// The configured pair encoder: the external scorer when one is set, else
// the baseline featurizer over the loaded embeddings.
std::unique_ptr<PairEncoder> MakeEncoder(const Config &config,
                                         const Resources &resources);

// Generates, labels and featurizes one question's candidates.
LabeledQuestion PrepareQuestion(const Resources &resources, const PairEncoder &encoder,
                                const QAPair &pair);

// PrepareQuestion over a dataset; questions run in parallel when the
// encoder is thread-safe.
std::vector<LabeledQuestion> PrepareQuestions(const Resources &resources,
                                              const PairEncoder &encoder,
                                              std::span<const QAPair> pairs);
std::vector<LabeledQuestion> PrepareQuestionsSerial(const Resources &resources,
                                                    const PairEncoder &encoder,
                                                    std::span<const QAPair> pairs);

struct AnswerResult {
  std::set<Node> nodes;
  std::vector<std::string> answers;
  nlohmann::json trace;
};

// generate -> rank -> top-n -> rerank -> execute the best graph. Without a
// rerank model the ranking top-1 is executed.
AnswerResult Answer(const std::string &question, const Resources &resources,
                    const PairEncoder &encoder, const LinearHead &rank_head,
                    const RerankModel *rerank_model, int n);

// Top-1 answers for prepared questions: ranking only when `rerank_model` is
// null, otherwise reranking of the rank head's top-n.
std::vector<std::vector<std::string>> PredictAnswers(
    std::span<const LabeledQuestion> questions, const LinearHead &rank_head,
    const RerankModel *rerank_model, int n);

EvalResult EvaluatePrepared(std::span<const LabeledQuestion> questions,
                            const LinearHead &rank_head,
                            const RerankModel *rerank_model, int n);

// "id,precision,recall,f1" per question followed by an "average" row.
std::string EvalCsv(std::span<const LabeledQuestion> questions, const EvalResult &result);

// Candidate F1 values of each question in ranking order.
std::vector<std::vector<double>> RankedF1(std::span<const LabeledQuestion> questions,
                                          const LinearHead &rank_head);

// Average best candidate F1 as computed at labeling time.
double LabelingOracle(std::span<const LabeledQuestion> questions);

// "n,oracle_f1" rows.
std::string OracleCurveCsv(std::span<const OraclePoint> curve);

}  // namespace kbqa

#endif  // KBQA_PIPELINE_H_
