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

#ifndef KBQA_TSV_H_
#define KBQA_TSV_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace kbqa {

// Calls `fn(line_number, fields)` for every non-blank line of a tab-separated
// file that does not start with '#'. Line numbers are 1-based. Throws
// LoadError when the file cannot be opened.
void ForEachTsvLine(
    const std::string &path,
    const std::function<void(int, const std::vector<std::string_view> &)>
        &fn);

std::vector<std::string_view> SplitTabs(std::string_view line);

}  // namespace kbqa

#endif  // KBQA_TSV_H_
