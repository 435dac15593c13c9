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

#ifndef KBQA_EMBEDDINGS_H_
#define KBQA_EMBEDDINGS_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace kbqa {

// Word vectors of a fixed dimension. Unknown words map to the zero vector.
class WordEmbeddings {
 public:
  WordEmbeddings() = default;
  explicit WordEmbeddings(int dimension) : dimension_(dimension) {}

  // Text format: first line "count dimension", then "word v1 ... vd".
  static WordEmbeddings Load(const std::string &path);

  void Add(const std::string &word, std::vector<double> vector);

  int dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }

  // The vector for `word`, or nullptr when unknown.
  const std::vector<double> *Find(const std::string &word) const;

  // Mean of the token vectors, unknown tokens counting as zero. An empty
  // token list yields the zero vector.
  std::vector<double> Mean(std::span<const std::string> tokens) const;

 private:
  int dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Cosine similarity; 0 when either vector is all zeros.
double Cosine(std::span<const double> a, std::span<const double> b);

}  // namespace kbqa

#endif  // KBQA_EMBEDDINGS_H_
