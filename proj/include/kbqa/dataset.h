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

#ifndef KBQA_DATASET_H_
#define KBQA_DATASET_H_

#include <span>
#include <string>
#include <vector>

namespace kbqa {

// A question with its gold answer strings.
struct QAPair {
  std::string id;
  std::string question;
  std::vector<std::string> answers;

  bool operator==(const QAPair &) const = default;
};

// Newline-delimited JSON objects with keys "id", "question" and "answers".
// Throws LoadError or ParseError (with the line number).
std::vector<QAPair> LoadDataset(const std::string &path);

void SaveDataset(const std::string &path, std::span<const QAPair> pairs);

}  // namespace kbqa

#endif  // KBQA_DATASET_H_
