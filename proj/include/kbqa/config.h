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

#ifndef KBQA_CONFIG_H_
#define KBQA_CONFIG_H_

#include <string>

#include "kbqa/query_graph.h"
#include "kbqa/ranking.h"

namespace kbqa {

// Global JSON configuration. Relative paths resolve against the directory
// of the config file.
struct Config {
  std::string kb_triples;
  std::string kb_types;
  std::string names;
  std::string lexicon;
  std::string embeddings;
  std::string ordinal_dict;
  std::string train;
  std::string valid;
  std::string test;
  // Optional shell command of an external pair scorer.
  std::string external_scorer;

  TrainConfig training;
  int type_links_k = 10;
  SearchLimits limits;

  static Config Load(const std::string &path);
  static Config FromJson(const nlohmann::json &json, const std::string &base_dir);
};

}  // namespace kbqa

#endif  // KBQA_CONFIG_H_
