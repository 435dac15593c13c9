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

#ifndef KBQA_METRICS_H_
#define KBQA_METRICS_H_

#include <span>
#include <string>
#include <vector>

namespace kbqa {

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Set precision/recall/F1 of predicted against gold answer strings, compared
// after NormalizeAnswer. Empty predictions score (0, 0, 0).
Prf QuestionPrf(std::span<const std::string> predicted,
                std::span<const std::string> gold);

struct EvalResult {
  double avg_precision = 0;
  double avg_recall = 0;
  double avg_f1 = 0;
  std::vector<Prf> records;
};

// Per-question scores and their means over all questions.
EvalResult Evaluate(std::span<const std::vector<std::string>> predicted,
                    std::span<const std::vector<std::string>> gold);

// Point (n, average over questions of the best F1 within the first n).
struct OraclePoint {
  int n = 0;
  double oracle_f1 = 0;
};

// `ranked_f1[q]` holds question q's candidate F1 values in ranked order.
std::vector<OraclePoint> OracleCurve(std::span<const std::vector<double>> ranked_f1,
                                     int n_max);

// Average over questions of the best F1 among all candidates.
double FullOracle(std::span<const std::vector<double>> ranked_f1);

}  // namespace kbqa

#endif  // KBQA_METRICS_H_
