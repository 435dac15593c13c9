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

#ifndef KBQA_ERROR_H_
#define KBQA_ERROR_H_

#include <stdexcept>
#include <string>

namespace kbqa {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened or read.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A line in an input file is malformed.
class ParseError : public Error {
 public:
  ParseError(const std::string &path, int line, const std::string &what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Training cannot proceed (empty data, non-finite gradients).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// A caller broke an API precondition, e.g. mismatched dimensions.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace kbqa

#endif  // KBQA_ERROR_H_
