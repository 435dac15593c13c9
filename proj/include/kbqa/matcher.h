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

#ifndef KBQA_MATCHER_H_
#define KBQA_MATCHER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kbqa/embeddings.h"
#include "kbqa/query_graph.h"
#include "kbqa/text.h"

namespace kbqa {

// Dimension of the baseline pair features.
inline constexpr int kBaselineDimension = 8;

using FeatureVector = std::vector<double>;

// Structural facts about a graph sequence that the token list alone loses.
struct SequenceMeta {
  int main_hops = 0;
  int constraint_sections = 0;
};

// A question paired with a token sequence: a graph sequence for the rank
// channel or an answer-type sequence for the type channel.
struct PairInput {
  std::string question_text;
  std::vector<std::string> question;
  std::vector<std::string> sequence;
  std::optional<SequenceMeta> meta;

  static PairInput ForGraph(const Question &q, const QueryGraphSequence &seq);
  static PairInput ForTokens(const Question &q, std::vector<std::string> tokens);
};

// Linear scoring layer: score = f . weights + bias.
struct LinearHead {
  std::vector<double> weights;
  double bias = 0;

  static LinearHead Zero(int dimension) {
    return LinearHead{std::vector<double>(dimension, 0.0), 0.0};
  }
  int dimension() const { return static_cast<int>(weights.size()); }
  bool operator==(const LinearHead &) const = default;
};

// Maps a pair to a fixed-length feature vector. Implementations must be
// deterministic.
class PairEncoder {
 public:
  virtual ~PairEncoder() = default;

  virtual int dimension() const = 0;
  virtual FeatureVector Encode(const PairInput &pair) const = 0;

  // Encodes many pairs; the default runs Encode in parallel when the
  // encoder is thread-safe and serially otherwise. Output order matches
  // input order.
  virtual std::vector<FeatureVector> EncodeBatch(
      std::span<const PairInput> pairs) const;

  virtual bool thread_safe() const { return true; }
};

// The built-in lexical/embedding featurizer.
class BaselineEncoder : public PairEncoder {
 public:
  explicit BaselineEncoder(const WordEmbeddings &embeddings)
      : embeddings_(embeddings) {}

  int dimension() const override { return kBaselineDimension; }
  FeatureVector Encode(const PairInput &pair) const override;

 private:
  const WordEmbeddings &embeddings_;
};

bool IsStopword(const std::string &token);

// The eight baseline features, in order:
//   0 cosine of mean embeddings (0 when either mean is zero)
//   1 token Jaccard overlap
//   2 fraction of question content tokens present in the sequence
//   3 fraction of sequence tokens present in the question
//   4 |m - n| / (m + n)
//   5 1 when the sequence metadata reports a two-hop main path
//   6 constraint sections present / 4
//   7 constant 1
FeatureVector FeaturizePair(const PairInput &pair, const WordEmbeddings &embeddings);

// f . weights + bias. Throws ContractError on a dimension mismatch.
double LinearScore(std::span<const double> features, const LinearHead &head);

// Numerically stable logistic function.
double Sigmoid(double x);

inline constexpr double kProbabilityEpsilon = 1e-12;

// Binary cross-entropy with the probability clamped to [eps, 1 - eps].
double BceLoss(double probability, int label);

struct LossGradient {
  double loss = 0;
  std::vector<double> weights;
  double bias = 0;
};

// Mean BCE loss over the batch and its gradient with respect to the head.
LossGradient MeanLossGradient(std::span<const FeatureVector> features,
                              std::span<const int> labels, const LinearHead &head);

// One full-batch gradient-descent step. Throws TrainingError when the batch
// is empty or the gradient is not finite.
LinearHead GradStep(const LinearHead &head, std::span<const FeatureVector> features,
                    std::span<const int> labels, double learning_rate);

}  // namespace kbqa

#endif  // KBQA_MATCHER_H_
