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

#include "kbqa/metrics.h"

#include <algorithm>
#include <set>

#include "kbqa/error.h"
#include "kbqa/text.h"

namespace kbqa {

Prf QuestionPrf(std::span<const std::string> predicted,
                std::span<const std::string> gold) {
  std::set<std::string> pred_set, gold_set;
  for (const auto &p : predicted) pred_set.insert(NormalizeAnswer(p));
  for (const auto &g : gold) gold_set.insert(NormalizeAnswer(g));
  size_t hits = 0;
  for (const auto &p : pred_set) hits += gold_set.count(p);
  Prf prf;
  if (!pred_set.empty()) prf.precision = static_cast<double>(hits) / pred_set.size();
  if (!gold_set.empty()) prf.recall = static_cast<double>(hits) / gold_set.size();
  if (prf.precision + prf.recall > 0) {
    prf.f1 = 2 * prf.precision * prf.recall / (prf.precision + prf.recall);
  }
  return prf;
}

EvalResult Evaluate(std::span<const std::vector<std::string>> predicted,
                    std::span<const std::vector<std::string>> gold) {
  if (predicted.size() != gold.size()) {
    throw ContractError("Evaluate: predictions and gold differ in length");
  }
  EvalResult result;
  for (size_t i = 0; i < gold.size(); ++i) {
    result.records.push_back(QuestionPrf(predicted[i], gold[i]));
  }
  if (result.records.empty()) return result;
  for (const Prf &r : result.records) {
    result.avg_precision += r.precision;
    result.avg_recall += r.recall;
    result.avg_f1 += r.f1;
  }
  const double n = static_cast<double>(result.records.size());
  result.avg_precision /= n;
  result.avg_recall /= n;
  result.avg_f1 /= n;
  return result;
}

std::vector<OraclePoint> OracleCurve(std::span<const std::vector<double>> ranked_f1,
                                     int n_max) {
  std::vector<OraclePoint> curve;
  if (n_max < 1) return curve;
  // best[q] is the running max over the prefix seen so far.
  std::vector<double> best(ranked_f1.size(), 0.0);
  for (int n = 1; n <= n_max; ++n) {
    double total = 0;
    for (size_t q = 0; q < ranked_f1.size(); ++q) {
      if (static_cast<size_t>(n) <= ranked_f1[q].size()) {
        best[q] = std::max(best[q], ranked_f1[q][n - 1]);
      }
      total += best[q];
    }
    curve.push_back({n, ranked_f1.empty() ? 0.0 : total / ranked_f1.size()});
  }
  return curve;
}

double FullOracle(std::span<const std::vector<double>> ranked_f1) {
  if (ranked_f1.empty()) return 0;
  double total = 0;
  for (const auto &list : ranked_f1) {
    double best = 0;
    for (double f : list) best = std::max(best, f);
    total += best;
  }
  return total / ranked_f1.size();
}

}  // namespace kbqa
