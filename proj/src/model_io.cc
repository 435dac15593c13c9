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

#include "kbqa/model_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kbqa/error.h"

namespace kbqa {

namespace {

nlohmann::json ReadJson(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json json = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (json.is_discarded() || !json.is_object()) {
    throw LoadError("malformed model file");
  }
  auto version = json.find("version");
  if (version != json.end() &&
      (!version->is_number_integer() || version->get<int>() != kModelFormatVersion)) {
    throw LoadError("unsupported model version");
  }
  return json;
}

void WriteJson(const std::string &path, const nlohmann::json &json) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path);
  out << json.dump(2) << '\n';
  if (!out) throw LoadError("write failure on " + path);
}

int ReadDimension(const nlohmann::json &json) {
  auto d = json.find("dimension");
  if (d == json.end() || !d->is_number_integer() || d->get<int>() < 1) {
    throw LoadError("model: missing or invalid dimension");
  }
  return d->get<int>();
}

}  // namespace

nlohmann::json HeadToJson(const LinearHead &head) {
  return {{"dimension", head.dimension()}, {"weights", head.weights}, {"bias", head.bias}};
}

LinearHead HeadFromJson(const nlohmann::json &json) {
  if (!json.is_object()) throw LoadError("model: head is not an object");
  const int dimension = ReadDimension(json);
  auto weights = json.find("weights");
  auto bias = json.find("bias");
  if (weights == json.end() || !weights->is_array() || bias == json.end() ||
      !bias->is_number()) {
    throw LoadError("model: head needs weights array and numeric bias");
  }
  LinearHead head;
  for (const auto &w : *weights) {
    if (!w.is_number()) throw LoadError("model: non-numeric weight");
    head.weights.push_back(w.get<double>());
  }
  head.bias = bias->get<double>();
  if (head.dimension() != dimension) {
    throw LoadError("model: weights length does not match dimension");
  }
  for (double w : head.weights) {
    if (!std::isfinite(w)) throw LoadError("model: non-finite weight");
  }
  if (!std::isfinite(head.bias)) throw LoadError("model: non-finite bias");
  return head;
}

void SaveRankModel(const std::string &path, const LinearHead &head) {
  nlohmann::json json = HeadToJson(head);
  json["version"] = kModelFormatVersion;
  WriteJson(path, json);
}

LinearHead LoadRankModel(const std::string &path) {
  try {
    return HeadFromJson(ReadJson(path));
  } catch (const LoadError &e) {
    throw LoadError(path + ": " + e.what());
  }
}

void SaveRerankModel(const std::string &path, const RerankModel &model) {
  nlohmann::json json = {{"version", kModelFormatVersion},
                         {"dimension", model.seq_head.dimension()},
                         {"seq_head", HeadToJson(model.seq_head)},
                         {"type_head", HeadToJson(model.type_head)}};
  WriteJson(path, json);
}

RerankModel LoadRerankModel(const std::string &path) {
  try {
    nlohmann::json json = ReadJson(path);
    const int dimension = ReadDimension(json);
    if (!json.contains("seq_head") || !json.contains("type_head")) {
      throw LoadError("model: missing seq_head or type_head");
    }
    RerankModel model;
    model.seq_head = HeadFromJson(json["seq_head"]);
    model.type_head = HeadFromJson(json["type_head"]);
    if (model.seq_head.dimension() != dimension ||
        model.type_head.dimension() != dimension) {
      throw LoadError("model: head dimensions disagree");
    }
    return model;
  } catch (const LoadError &e) {
    throw LoadError(path + ": " + e.what());
  }
}

}  // namespace kbqa
