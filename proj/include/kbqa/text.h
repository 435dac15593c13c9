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

#ifndef KBQA_TEXT_H_
#define KBQA_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kbqa {

// Lowercases, strips ASCII punctuation and splits on whitespace.
std::vector<std::string> Tokenize(std::string_view text);

// Splits an identifier such as "government.office_holder" on '.' and '_'
// into lowercase words.
std::vector<std::string> SplitIdentifier(std::string_view id);

std::string JoinTokens(std::span<const std::string> tokens,
                       std::string_view separator = " ");

// Canonical form used when comparing answer strings: lowercase, trimmed,
// internal whitespace collapsed to single spaces.
std::string NormalizeAnswer(std::string_view text);

// A natural-language question and its token sequence w_1..w_m.
struct Question {
  std::string raw;
  std::vector<std::string> tokens;

  static Question FromText(std::string_view text);
};

}  // namespace kbqa

#endif  // KBQA_TEXT_H_
