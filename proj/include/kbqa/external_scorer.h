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

#ifndef KBQA_EXTERNAL_SCORER_H_
#define KBQA_EXTERNAL_SCORER_H_

// Adapter for scoring pairs with an out-of-process model. The child process
// reads newline-delimited JSON requests {"id", "question", "sequence"} on
// stdin and writes {"id", "score"} responses on stdout, in any order.

#include <string>
#include <string_view>
#include <vector>

#include "kbqa/matcher.h"

namespace kbqa {

std::string EncodeScoreRequest(const std::string &id, const std::string &question,
                               const std::string &sequence);

struct ScoreResponse {
  std::string id;
  double score = 0;
};

// Throws Error on malformed JSON or missing/ill-typed fields.
ScoreResponse ParseScoreResponse(std::string_view line);

// Scores a batch over an already-connected request/response stream pair.
// Requests get ids "0".."n-1"; responses are matched back by id.
std::vector<double> ScoreOverStreams(std::span<const PairInput> pairs,
                                     std::ostream &requests,
                                     std::istream &responses);

// Runs `command` through /bin/sh and talks to it over its standard streams.
// The encoder produces two features: the external score and a constant 1.
class ExternalScorerEncoder : public PairEncoder {
 public:
  explicit ExternalScorerEncoder(std::string command);
  ~ExternalScorerEncoder() override;

  ExternalScorerEncoder(const ExternalScorerEncoder &) = delete;
  ExternalScorerEncoder &operator=(const ExternalScorerEncoder &) = delete;

  int dimension() const override { return 2; }
  FeatureVector Encode(const PairInput &pair) const override;
  std::vector<FeatureVector> EncodeBatch(
      std::span<const PairInput> pairs) const override;
  bool thread_safe() const override { return false; }

 private:
  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
};

}  // namespace kbqa

#endif  // KBQA_EXTERNAL_SCORER_H_
