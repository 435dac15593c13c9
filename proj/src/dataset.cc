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

#include "kbqa/dataset.h"

#include <fstream>

#include "json.hpp"
#include "kbqa/error.h"

namespace kbqa {

std::vector<QAPair> LoadDataset(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::vector<QAPair> pairs;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json object = nlohmann::json::parse(line, nullptr, false);
    if (object.is_discarded() || !object.is_object()) {
      throw ParseError(path, line_number, "not a JSON object");
    }
    auto id = object.find("id");
    auto question = object.find("question");
    auto answers = object.find("answers");
    if (id == object.end() || !id->is_string() || question == object.end() ||
        !question->is_string() || answers == object.end() || !answers->is_array()) {
      throw ParseError(path, line_number,
                       "expected string id, string question, answers array");
    }
    QAPair pair{id->get<std::string>(), question->get<std::string>(), {}};
    for (const auto &answer : *answers) {
      if (!answer.is_string()) throw ParseError(path, line_number, "answer not a string");
      pair.answers.push_back(answer.get<std::string>());
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void SaveDataset(const std::string &path, std::span<const QAPair> pairs) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path);
  for (const QAPair &pair : pairs) {
    nlohmann::json object = {
        {"id", pair.id}, {"question", pair.question}, {"answers", pair.answers}};
    out << object.dump() << '\n';
  }
}

}  // namespace kbqa
