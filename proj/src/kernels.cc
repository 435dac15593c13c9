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

#include "kbqa/kernels.h"


#include "kbqa/error.h"

namespace kbqa::kernels {

namespace {

void CheckBatch(size_t features, size_t labels) {
  if (features != labels) throw ContractError("features and labels differ in length");
}

// Sums residual-weighted features in item order.
void Accumulate(std::span<const FeatureVector> features,
                std::span<const double> residuals, LossGradient *grad) {
  const size_t n = features.size();
  const size_t d = grad->weights.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < d; ++j) grad->weights[j] += residuals[i] * features[i][j];
    grad->bias += residuals[i];
  }
  for (double &w : grad->weights) w /= static_cast<double>(n);
  grad->bias /= static_cast<double>(n);
}

double MeanOf(std::span<const double> values) {
  double total = 0;
  for (double v : values) total += v;
  return values.empty() ? 0.0 : total / values.size();
}

}  // namespace

std::vector<FeatureVector> EncodeBatch(const PairEncoder &encoder,
                                       std::span<const PairInput> pairs) {
  std::vector<FeatureVector> out(pairs.size());
  const long n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) out[i] = encoder.Encode(pairs[i]);
  return out;
}

std::vector<FeatureVector> EncodeBatchSerial(const PairEncoder &encoder,
                                             std::span<const PairInput> pairs) {
  std::vector<FeatureVector> out;
  out.reserve(pairs.size());
  for (const PairInput &p : pairs) out.push_back(encoder.Encode(p));
  return out;
}

std::vector<double> ScoreBatch(std::span<const FeatureVector> features,
                               const LinearHead &head) {
  for (const auto &f : features) {
    if (f.size() != head.weights.size()) {
      throw ContractError("feature dimension does not match head");
    }
  }
  std::vector<double> scores(features.size());
  const long n = static_cast<long>(features.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) scores[i] = LinearScore(features[i], head);
  return scores;
}

std::vector<double> ScoreBatchSerial(std::span<const FeatureVector> features,
                                     const LinearHead &head) {
  std::vector<double> scores;
  scores.reserve(features.size());
  for (const auto &f : features) scores.push_back(LinearScore(f, head));
  return scores;
}

LossGradient MeanLossGradient(std::span<const FeatureVector> features,
                              std::span<const int> labels, const LinearHead &head) {
  CheckBatch(features.size(), labels.size());
  std::vector<double> scores = ScoreBatch(features, head);
  const long n = static_cast<long>(features.size());
  std::vector<double> residuals(n), losses(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    double s = Sigmoid(scores[i]);
    residuals[i] = s - labels[i];
    losses[i] = BceLoss(s, labels[i]);
  }
  LossGradient grad{MeanOf(losses), std::vector<double>(head.weights.size(), 0.0), 0};
  Accumulate(features, residuals, &grad);
  return grad;
}

LossGradient MeanLossGradientSerial(std::span<const FeatureVector> features,
                                    std::span<const int> labels,
                                    const LinearHead &head) {
  CheckBatch(features.size(), labels.size());
  std::vector<double> residuals, losses;
  for (size_t i = 0; i < features.size(); ++i) {
    double s = Sigmoid(LinearScore(features[i], head));
    residuals.push_back(s - labels[i]);
    losses.push_back(BceLoss(s, labels[i]));
  }
  LossGradient grad{MeanOf(losses), std::vector<double>(head.weights.size(), 0.0), 0};
  Accumulate(features, residuals, &grad);
  return grad;
}

JointGradient JointLossGradient(std::span<const FeatureVector> seq_features,
                                std::span<const FeatureVector> type_features,
                                std::span<const int> labels,
                                const LinearHead &seq_head,
                                const LinearHead &type_head) {
  CheckBatch(seq_features.size(), labels.size());
  CheckBatch(type_features.size(), labels.size());
  std::vector<double> seq_scores = ScoreBatch(seq_features, seq_head);
  std::vector<double> type_scores = ScoreBatch(type_features, type_head);
  const long n = static_cast<long>(labels.size());
  std::vector<double> residuals(n), losses(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    double s = Sigmoid(seq_scores[i] + type_scores[i]);
    residuals[i] = s - labels[i];
    losses[i] = BceLoss(s, labels[i]);
  }
  JointGradient grad;
  grad.loss = MeanOf(losses);
  grad.seq.weights.assign(seq_head.weights.size(), 0.0);
  grad.type.weights.assign(type_head.weights.size(), 0.0);
  Accumulate(seq_features, residuals, &grad.seq);
  Accumulate(type_features, residuals, &grad.type);
  grad.seq.loss = grad.type.loss = grad.loss;
  return grad;
}

JointGradient JointLossGradientSerial(std::span<const FeatureVector> seq_features,
                                      std::span<const FeatureVector> type_features,
                                      std::span<const int> labels,
                                      const LinearHead &seq_head,
                                      const LinearHead &type_head) {
  CheckBatch(seq_features.size(), labels.size());
  CheckBatch(type_features.size(), labels.size());
  std::vector<double> residuals, losses;
  for (size_t i = 0; i < labels.size(); ++i) {
    double s = Sigmoid(LinearScore(seq_features[i], seq_head) +
                       LinearScore(type_features[i], type_head));
    residuals.push_back(s - labels[i]);
    losses.push_back(BceLoss(s, labels[i]));
  }
  JointGradient grad;
  grad.loss = MeanOf(losses);
  grad.seq.weights.assign(seq_head.weights.size(), 0.0);
  grad.type.weights.assign(type_head.weights.size(), 0.0);
  Accumulate(seq_features, residuals, &grad.seq);
  Accumulate(type_features, residuals, &grad.type);
  grad.seq.loss = grad.type.loss = grad.loss;
  return grad;
}

}  // namespace kbqa::kernels
