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

#ifndef KBQA_KERNELS_H_
#define KBQA_KERNELS_H_

// Data-parallel batch kernels. Every OpenMP kernel has a serial reference
// with the same name and a Serial suffix. Per-item work runs in parallel
// into per-item slots and reductions are summed serially in item order, so
// both versions return bit-identical results for any thread count.

#include <span>
#include <vector>

#include "kbqa/matcher.h"

namespace kbqa::kernels {

std::vector<FeatureVector> EncodeBatch(const PairEncoder &encoder,
                                       std::span<const PairInput> pairs);
std::vector<FeatureVector> EncodeBatchSerial(const PairEncoder &encoder,
                                             std::span<const PairInput> pairs);

std::vector<double> ScoreBatch(std::span<const FeatureVector> features,
                               const LinearHead &head);
std::vector<double> ScoreBatchSerial(std::span<const FeatureVector> features,
                                     const LinearHead &head);

LossGradient MeanLossGradient(std::span<const FeatureVector> features,
                              std::span<const int> labels, const LinearHead &head);
LossGradient MeanLossGradientSerial(std::span<const FeatureVector> features,
                                    std::span<const int> labels,
                                    const LinearHead &head);

// Gradient of the mean loss of sigmoid(s' + s'') for two heads over paired
// feature vectors.
struct JointGradient {
  double loss = 0;
  LossGradient seq;
  LossGradient type;
};

JointGradient JointLossGradient(std::span<const FeatureVector> seq_features,
                                std::span<const FeatureVector> type_features,
                                std::span<const int> labels,
                                const LinearHead &seq_head,
                                const LinearHead &type_head);
JointGradient JointLossGradientSerial(std::span<const FeatureVector> seq_features,
                                      std::span<const FeatureVector> type_features,
                                      std::span<const int> labels,
                                      const LinearHead &seq_head,
                                      const LinearHead &type_head);

}  // namespace kbqa::kernels

#endif  // KBQA_KERNELS_H_
