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

#include "kbqa/embeddings.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "kbqa/error.h"

namespace kbqa {

WordEmbeddings WordEmbeddings::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  std::istringstream header(line);
  long count = 0;
  int dimension = 0;
  if (!(header >> count >> dimension) || count < 0 || dimension <= 0) {
    throw ParseError(path, 1, "header must be 'count dimension'");
  }
  WordEmbeddings embeddings(dimension);
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> vector(dimension);
    for (int i = 0; i < dimension; ++i) {
      if (!(fields >> vector[i])) {
        throw ParseError(path, line_number, "expected " +
                                                std::to_string(dimension) +
                                                " components");
      }
    }
    double extra;
    if (fields >> extra) throw ParseError(path, line_number, "too many components");
    embeddings.Add(word, std::move(vector));
  }
  if (static_cast<long>(embeddings.size()) != count) {
    throw ParseError(path, 1, "header count does not match number of vectors");
  }
  return embeddings;
}

void WordEmbeddings::Add(const std::string &word, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dimension_) {
    throw ContractError("embedding for '" + word + "' has wrong dimension");
  }
  vectors_[word] = std::move(vector);
}

const std::vector<double> *WordEmbeddings::Find(const std::string &word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::vector<double> WordEmbeddings::Mean(
    std::span<const std::string> tokens) const {
  std::vector<double> mean(dimension_, 0.0);
  if (tokens.empty()) return mean;
  for (const std::string &token : tokens) {
    if (const auto *v = Find(token)) {
      for (int i = 0; i < dimension_; ++i) mean[i] += (*v)[i];
    }
  }
  for (double &x : mean) x /= static_cast<double>(tokens.size());
  return mean;
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(cosine, -1.0, 1.0);
}

}  // namespace kbqa
