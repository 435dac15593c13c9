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

#include "kbqa/matcher.h"

#include <cmath>
#include <cstdlib>
#include <set>
#include <unordered_set>

#include "kbqa/error.h"
#include "kbqa/kernels.h"

namespace kbqa {

PairInput PairInput::ForGraph(const Question &q, const QueryGraphSequence &seq) {
  return PairInput{q.raw, q.tokens, seq.tokens,
                   SequenceMeta{seq.main_hops, seq.ConstraintSectionCount()}};
}

PairInput PairInput::ForTokens(const Question &q, std::vector<std::string> tokens) {
  return PairInput{q.raw, q.tokens, std::move(tokens), std::nullopt};
}

std::vector<FeatureVector> PairEncoder::EncodeBatch(
    std::span<const PairInput> pairs) const {
  if (thread_safe()) return kernels::EncodeBatch(*this, pairs);
  return kernels::EncodeBatchSerial(*this, pairs);
}

FeatureVector BaselineEncoder::Encode(const PairInput &pair) const {
  return FeaturizePair(pair, embeddings_);
}

bool IsStopword(const std::string &token) {
  static const std::unordered_set<std::string> kStopwords = {
      "a",    "an",    "the",  "of",   "in",    "on",   "at",  "to",
      "for",  "is",    "are",  "was",  "were",  "be",   "by",  "with",
      "and",  "or",    "did",  "does", "do",    "what", "who", "whom",
      "which", "where", "when", "how", "why",   "s",    "from", "as"};
  return kStopwords.contains(token);
}

FeatureVector FeaturizePair(const PairInput &pair, const WordEmbeddings &embeddings) {
  FeatureVector f(kBaselineDimension, 0.0);
  const auto &q = pair.question;
  const auto &s = pair.sequence;

  f[0] = Cosine(embeddings.Mean(q), embeddings.Mean(s));

  std::set<std::string> q_set(q.begin(), q.end());
  std::set<std::string> s_set(s.begin(), s.end());
  size_t common = 0;
  for (const auto &t : q_set) common += s_set.count(t);
  size_t unioned = q_set.size() + s_set.size() - common;
  f[1] = unioned == 0 ? 0.0 : static_cast<double>(common) / unioned;

  size_t content = 0, content_hits = 0;
  for (const auto &t : q) {
    if (IsStopword(t)) continue;
    ++content;
    if (s_set.contains(t)) ++content_hits;
  }
  f[2] = content == 0 ? 0.0 : static_cast<double>(content_hits) / content;

  size_t seq_hits = 0;
  for (const auto &t : s) seq_hits += q_set.count(t);
  f[3] = s.empty() ? 0.0 : static_cast<double>(seq_hits) / s.size();

  const double m = static_cast<double>(q.size()), n = static_cast<double>(s.size());
  f[4] = (m + n) == 0 ? 0.0 : std::abs(m - n) / (m + n);

  if (pair.meta) {
    f[5] = pair.meta->main_hops == 2 ? 1.0 : 0.0;
    f[6] = pair.meta->constraint_sections / 4.0;
  }
  f[7] = 1.0;
  return f;
}

double LinearScore(std::span<const double> features, const LinearHead &head) {
  if (features.size() != head.weights.size()) {
    throw ContractError("feature dimension " + std::to_string(features.size()) +
                        " does not match head dimension " +
                        std::to_string(head.weights.size()));
  }
  double score = head.bias;
  for (size_t i = 0; i < features.size(); ++i) score += features[i] * head.weights[i];
  return score;
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double BceLoss(double probability, int label) {
  double s = std::clamp(probability, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  return -(label * std::log(s) + (1 - label) * std::log(1.0 - s));
}

LossGradient MeanLossGradient(std::span<const FeatureVector> features,
                              std::span<const int> labels, const LinearHead &head) {
  return kernels::MeanLossGradient(features, labels, head);
}

LinearHead GradStep(const LinearHead &head, std::span<const FeatureVector> features,
                    std::span<const int> labels, double learning_rate) {
  if (features.empty()) throw TrainingError("gradient step on an empty batch");
  if (!(learning_rate > 0)) throw TrainingError("learning rate must be positive");
  LossGradient grad = MeanLossGradient(features, labels, head);
  LinearHead next = head;
  for (size_t i = 0; i < next.weights.size(); ++i) {
    if (!std::isfinite(grad.weights[i])) throw TrainingError("non-finite gradient");
    next.weights[i] -= learning_rate * grad.weights[i];
  }
  if (!std::isfinite(grad.bias)) throw TrainingError("non-finite gradient");
  next.bias -= learning_rate * grad.bias;
  return next;
}

}  // namespace kbqa
