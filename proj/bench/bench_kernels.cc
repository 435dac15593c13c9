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


// Times each OpenMP kernel against its serial reference on random inputs
// and checks that both produce identical results.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbqa/kernels.h"
#include "kbqa/matcher.h"

namespace {

using namespace kbqa;

double Millis(const std::function<void()> &fn, int repeats) {
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count() / repeats;
}

void Row(const char *name, double serial, double parallel, bool equal) {
  std::printf("%-22s serial %9.3f ms  omp %9.3f ms  speedup %5.2fx  %s\n", name, serial,
              parallel, serial / parallel, equal ? "equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  size_t count = 200000;
  int repeats = 5;
  int vocabulary = 2000;
  uint64_t seed = 1;
  app.add_option("--count", count, "Feature vectors / pairs per batch");
  app.add_option("--repeats", repeats, "Timed repetitions per kernel")->check(CLI::PositiveNumber);
  app.add_option("--vocabulary", vocabulary, "Embedding vocabulary size");
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  const int d = kBaselineDimension;
  std::vector<FeatureVector> seq(count, FeatureVector(d)), type(count, FeatureVector(d));
  for (auto &f : seq) for (double &x : f) x = unit(rng);
  for (auto &f : type) for (double &x : f) x = unit(rng);
  std::vector<int> labels(count);
  for (int &y : labels) y = unit(rng) < 0.1;
  LinearHead a = LinearHead::Zero(d), b = LinearHead::Zero(d);
  for (double &w : a.weights) w = unit(rng) - 0.5;
  for (double &w : b.weights) w = unit(rng) - 0.5;

  std::printf("threads %d, batch %zu, repeats %d\n", omp_get_max_threads(), count, repeats);
  bool all_equal = true;

  std::vector<double> s1, s2;
  double ts = Millis([&] { s1 = kernels::ScoreBatchSerial(seq, a); }, repeats);
  double tp = Millis([&] { s2 = kernels::ScoreBatch(seq, a); }, repeats);
  Row("score_batch", ts, tp, s1 == s2);
  all_equal &= s1 == s2;

  LossGradient g1, g2;
  ts = Millis([&] { g1 = kernels::MeanLossGradientSerial(seq, labels, a); }, repeats);
  tp = Millis([&] { g2 = kernels::MeanLossGradient(seq, labels, a); }, repeats);
  bool eq = g1.loss == g2.loss && g1.weights == g2.weights && g1.bias == g2.bias;
  Row("mean_loss_gradient", ts, tp, eq);
  all_equal &= eq;

  kernels::JointGradient j1, j2;
  ts = Millis([&] { j1 = kernels::JointLossGradientSerial(seq, type, labels, a, b); }, repeats);
  tp = Millis([&] { j2 = kernels::JointLossGradient(seq, type, labels, a, b); }, repeats);
  eq = j1.loss == j2.loss && j1.seq.weights == j2.seq.weights &&
       j1.type.weights == j2.type.weights && j1.seq.bias == j2.seq.bias &&
       j1.type.bias == j2.type.bias;
  Row("joint_loss_gradient", ts, tp, eq);
  all_equal &= eq;

  WordEmbeddings embeddings(50);
  std::vector<std::string> words;
  for (int w = 0; w < vocabulary; ++w) {
    words.push_back("w" + std::to_string(w));
    std::vector<double> v(50);
    for (double &x : v) x = unit(rng) - 0.5;
    embeddings.Add(words.back(), v);
  }
  BaselineEncoder encoder(embeddings);
  const size_t pair_count = count / 10;
  std::vector<PairInput> pairs(pair_count);
  for (PairInput &p : pairs) {
    for (int i = 0; i < 8; ++i) p.question.push_back(words[rng() % words.size()]);
    for (int i = 0; i < 12; ++i) p.sequence.push_back(words[rng() % words.size()]);
    p.meta = SequenceMeta{1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 4)};
  }
  std::vector<FeatureVector> e1, e2;
  ts = Millis([&] { e1 = kernels::EncodeBatchSerial(encoder, pairs); }, repeats);
  tp = Millis([&] { e2 = kernels::EncodeBatch(encoder, pairs); }, repeats);
  Row("encode_batch", ts, tp, e1 == e2);
  all_equal &= e1 == e2;

  return all_equal ? 0 : 1;
}
