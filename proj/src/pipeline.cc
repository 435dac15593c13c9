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

#include "kbqa/pipeline.h"

#include <cstdio>

#include "kbqa/external_scorer.h"
#include "kbqa/kernels.h"

namespace kbqa {

namespace {

std::string FormatDouble(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

Resources Resources::Load(const Config &config) {
  Resources resources;
  resources.kb = KnowledgeBase::Load(config.kb_triples, config.kb_types);
  if (!config.names.empty()) resources.names = NameTable::Load(config.names);
  resources.linking.lexicon = AliasLexicon::Load(config.lexicon);
  resources.linking.embeddings = WordEmbeddings::Load(config.embeddings);
  if (!config.ordinal_dict.empty()) {
    resources.linking.ordinals = OrdinalDictionary::Load(config.ordinal_dict);
  }
  resources.linking.kb_types = resources.kb.type_labels();
  resources.linking.type_k = config.type_links_k;
  resources.limits = config.limits;
  return resources;
}

std::unique_ptr<PairEncoder> MakeEncoder(const Config &config,
                                         const Resources &resources) {
  if (!config.external_scorer.empty()) {
    return std::make_unique<ExternalScorerEncoder>(config.external_scorer);
  }
  return std::make_unique<BaselineEncoder>(resources.linking.embeddings);
}

LabeledQuestion PrepareQuestion(const Resources &resources, const PairEncoder &encoder,
                                const QAPair &pair) {
  LabeledQuestion out;
  out.id = pair.id;
  out.question = Question::FromText(pair.question);
  out.gold = pair.answers;
  CandidateSet candidates = GenerateCandidates(resources.kb, out.question,
                                               resources.linking, resources.limits);
  out.report = candidates.report;
  out.candidates = LabelCandidates(candidates, out.gold, resources.kb, resources.names);

  std::vector<PairInput> seq_pairs, type_pairs;
  for (auto &c : out.candidates) {
    // Same answers as labeling; executed again to keep the node set.
    c.type_tokens = AnswerTypeSequence(resources.kb, c.graph).tokens;
    seq_pairs.push_back(PairInput::ForGraph(out.question, c.sequence));
    type_pairs.push_back(PairInput::ForTokens(out.question, c.type_tokens));
  }
  // Callers parallelize across questions, so a thread-safe encoder runs
  // serially here; others get a single batched round trip.
  std::vector<FeatureVector> f, f_t;
  if (encoder.thread_safe()) {
    f = kernels::EncodeBatchSerial(encoder, seq_pairs);
    f_t = kernels::EncodeBatchSerial(encoder, type_pairs);
  } else {
    f = encoder.EncodeBatch(seq_pairs);
    f_t = encoder.EncodeBatch(type_pairs);
  }
  for (size_t i = 0; i < out.candidates.size(); ++i) {
    out.candidates[i].features = std::move(f[i]);
    out.candidates[i].type_features = std::move(f_t[i]);
  }
  return out;
}

std::vector<LabeledQuestion> PrepareQuestions(const Resources &resources,
                                              const PairEncoder &encoder,
                                              std::span<const QAPair> pairs) {
  if (!encoder.thread_safe()) return PrepareQuestionsSerial(resources, encoder, pairs);
  std::vector<LabeledQuestion> out(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = PrepareQuestion(resources, encoder, pairs[i]);
  return out;
}

std::vector<LabeledQuestion> PrepareQuestionsSerial(const Resources &resources,
                                                    const PairEncoder &encoder,
                                                    std::span<const QAPair> pairs) {
  std::vector<LabeledQuestion> out;
  out.reserve(pairs.size());
  for (const QAPair &pair : pairs) out.push_back(PrepareQuestion(resources, encoder, pair));
  return out;
}

AnswerResult Answer(const std::string &text, const Resources &resources,
                    const PairEncoder &encoder, const LinearHead &rank_head,
                    const RerankModel *rerank_model, int n) {
  AnswerResult result;
  Question question = Question::FromText(text);
  CandidateSet candidates =
      GenerateCandidates(resources.kb, question, resources.linking, resources.limits);
  nlohmann::json &trace = result.trace;
  trace["question"] = text;
  trace["tokens"] = question.tokens;
  trace["generation"] = candidates.report.ToJson();
  if (candidates.graphs.empty()) {
    trace["reason"] = candidates.report.reason;
    return result;
  }

  auto ranked = RankCandidates(rank_head, encoder, candidates, resources.names);
  auto top = TopN(ranked, n);
  std::vector<ScoredCandidate> final_order = top;
  if (rerank_model != nullptr) {
    final_order = Rerank(*rerank_model, top, question, resources.kb, encoder);
  }

  nlohmann::json top_json = nlohmann::json::array();
  for (const ScoredCandidate &c : final_order) {
    nlohmann::json entry = {{"provenance", c.graph.provenance},
                            {"sequence", c.sequence.Text()},
                            {"rank_score", c.rank_score}};
    if (c.type_score) entry["type_score"] = *c.type_score;
    if (c.combined_score) entry["combined_score"] = *c.combined_score;
    top_json.push_back(entry);
  }
  trace["top_n"] = top_json;
  trace["reranked"] = rerank_model != nullptr;

  const ScoredCandidate &best = final_order.front();
  trace["chosen"] = best.graph.ToJson();
  trace["chosen_sequence"] = best.sequence.Text();
  result.nodes = Execute(resources.kb, best.graph);
  result.answers = RenderAnswers(result.nodes, resources.names);
  trace["answers"] = result.answers;
  return result;
}

std::vector<std::vector<std::string>> PredictAnswers(
    std::span<const LabeledQuestion> questions, const LinearHead &rank_head,
    const RerankModel *rerank_model, int n) {
  std::vector<std::vector<std::string>> predicted(questions.size());
  const long count = static_cast<long>(questions.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long q = 0; q < count; ++q) {
    const LabeledQuestion &question = questions[q];
    if (question.candidates.empty()) continue;
    std::vector<size_t> order = RankOrder(rank_head, question);
    size_t best = order.front();
    if (rerank_model != nullptr) {
      RerankList list{static_cast<size_t>(q), order};
      if (list.candidates.size() > static_cast<size_t>(n)) list.candidates.resize(n);
      best = list.candidates[RerankOrder(*rerank_model, question, list).front()];
    }
    predicted[q] = question.candidates[best].answers;
  }
  return predicted;
}

EvalResult EvaluatePrepared(std::span<const LabeledQuestion> questions,
                            const LinearHead &rank_head,
                            const RerankModel *rerank_model, int n) {
  auto predicted = PredictAnswers(questions, rank_head, rerank_model, n);
  std::vector<std::vector<std::string>> gold;
  gold.reserve(questions.size());
  for (const auto &q : questions) gold.push_back(q.gold);
  return Evaluate(predicted, gold);
}

std::string EvalCsv(std::span<const LabeledQuestion> questions, const EvalResult &result) {
  std::string csv = "id,precision,recall,f1\n";
  for (size_t i = 0; i < questions.size() && i < result.records.size(); ++i) {
    const Prf &r = result.records[i];
    csv += questions[i].id + "," + FormatDouble(r.precision) + "," +
           FormatDouble(r.recall) + "," + FormatDouble(r.f1) + "\n";
  }
  csv += "average," + FormatDouble(result.avg_precision) + "," +
         FormatDouble(result.avg_recall) + "," + FormatDouble(result.avg_f1) + "\n";
  return csv;
}

std::vector<std::vector<double>> RankedF1(std::span<const LabeledQuestion> questions,
                                          const LinearHead &rank_head) {
  std::vector<std::vector<double>> out;
  out.reserve(questions.size());
  for (const auto &q : questions) {
    std::vector<double> f1;
    for (size_t i : RankOrder(rank_head, q)) f1.push_back(q.candidates[i].f1);
    out.push_back(std::move(f1));
  }
  return out;
}

double LabelingOracle(std::span<const LabeledQuestion> questions) {
  if (questions.empty()) return 0;
  double total = 0;
  for (const auto &q : questions) {
    double best = 0;
    for (const auto &c : q.candidates) best = std::max(best, c.f1);
    total += best;
  }
  return total / questions.size();
}

std::string OracleCurveCsv(std::span<const OraclePoint> curve) {
  std::string csv = "n,oracle_f1\n";
  for (const OraclePoint &p : curve) {
    csv += std::to_string(p.n) + "," + FormatDouble(p.oracle_f1) + "\n";
  }
  return csv;
}

}  // namespace kbqa
