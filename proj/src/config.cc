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

#include "kbqa/config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kbqa/error.h"

namespace kbqa {

namespace {

std::string ResolvePath(const nlohmann::json &json, const char *key,
                        const std::string &base_dir) {
  auto it = json.find(key);
  if (it == json.end()) return "";
  if (!it->is_string()) throw LoadError(std::string("config: ") + key + " must be a string");
  std::filesystem::path path = it->get<std::string>();
  if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
  return path.string();
}

template <typename T>
void ReadNumber(const nlohmann::json &json, const char *key, T *out) {
  auto it = json.find(key);
  if (it == json.end()) return;
  if (!it->is_number()) throw LoadError(std::string("config: ") + key + " must be a number");
  *out = it->get<T>();
}

}  // namespace

Config Config::FromJson(const nlohmann::json &json, const std::string &base_dir) {
  if (!json.is_object()) throw LoadError("config: not a JSON object");
  Config config;
  config.kb_triples = ResolvePath(json, "kb_triples", base_dir);
  config.kb_types = ResolvePath(json, "kb_types", base_dir);
  config.names = ResolvePath(json, "names", base_dir);
  config.lexicon = ResolvePath(json, "lexicon", base_dir);
  config.embeddings = ResolvePath(json, "embeddings", base_dir);
  config.ordinal_dict = ResolvePath(json, "ordinal_dict", base_dir);
  config.train = ResolvePath(json, "train", base_dir);
  config.valid = ResolvePath(json, "valid", base_dir);
  config.test = ResolvePath(json, "test", base_dir);
  if (auto it = json.find("external_scorer"); it != json.end() && it->is_string()) {
    config.external_scorer = it->get<std::string>();
  }
  ReadNumber(json, "negatives_per_positive", &config.training.negatives_per_positive);
  ReadNumber(json, "learning_rate", &config.training.learning_rate);
  ReadNumber(json, "epochs", &config.training.epochs);
  ReadNumber(json, "seed", &config.training.seed);
  ReadNumber(json, "top_n", &config.training.top_n);
  ReadNumber(json, "type_links_k", &config.type_links_k);
  ReadNumber(json, "max_one_hop", &config.limits.max_one_hop);
  ReadNumber(json, "max_two_hop", &config.limits.max_two_hop);
  return config;
}

Config Config::Load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json json = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (json.is_discarded()) throw LoadError(path + ": malformed JSON");
  return FromJson(json, std::filesystem::path(path).parent_path().string());
}

}  // namespace kbqa
