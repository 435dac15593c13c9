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

#ifndef KBQA_MODEL_IO_H_
#define KBQA_MODEL_IO_H_

#include <string>

#include "json.hpp"
#include "kbqa/matcher.h"
#include "kbqa/reranking.h"

namespace kbqa {

// Model files carry this version; loading any other version fails.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json HeadToJson(const LinearHead &head);
LinearHead HeadFromJson(const nlohmann::json &json);

// {"version", "dimension", "weights", "bias"}.
void SaveRankModel(const std::string &path, const LinearHead &head);
LinearHead LoadRankModel(const std::string &path);

// {"version", "dimension", "seq_head": {...}, "type_head": {...}}.
void SaveRerankModel(const std::string &path, const RerankModel &model);
RerankModel LoadRerankModel(const std::string &path);

}  // namespace kbqa

#endif  // KBQA_MODEL_IO_H_
