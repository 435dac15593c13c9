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

#include "kbqa/external_scorer.h"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <ext/stdio_filebuf.h>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "kbqa/error.h"

namespace kbqa {

std::string EncodeScoreRequest(const std::string &id, const std::string &question,
                               const std::string &sequence) {
  nlohmann::json request = {{"id", id}, {"question", question}, {"sequence", sequence}};
  return request.dump();
}

ScoreResponse ParseScoreResponse(std::string_view line) {
  nlohmann::json response = nlohmann::json::parse(line, nullptr, false);
  if (response.is_discarded() || !response.is_object()) {
    throw Error("external scorer: malformed response '" + std::string(line) + "'");
  }
  auto id = response.find("id");
  auto score = response.find("score");
  if (id == response.end() || !id->is_string() || score == response.end() ||
      !score->is_number()) {
    throw Error("external scorer: response needs string id and numeric score");
  }
  return ScoreResponse{id->get<std::string>(), score->get<double>()};
}

std::vector<double> ScoreOverStreams(std::span<const PairInput> pairs,
                                     std::ostream &requests,
                                     std::istream &responses) {
  std::thread writer([&] {
    for (size_t i = 0; i < pairs.size(); ++i) {
      requests << EncodeScoreRequest(std::to_string(i), pairs[i].question_text,
                                     JoinTokens(pairs[i].sequence))
               << '\n';
    }
    requests.flush();
  });

  std::vector<double> scores(pairs.size(), 0.0);
  std::vector<bool> seen(pairs.size(), false);
  size_t received = 0;
  std::string line;
  std::string failure;
  while (received < pairs.size() && std::getline(responses, line)) {
    if (line.empty()) continue;
    try {
      ScoreResponse r = ParseScoreResponse(line);
      size_t index = 0;
      bool numeric = !r.id.empty() &&
                     r.id.find_first_not_of("0123456789") == std::string::npos;
      if (numeric) index = std::stoul(r.id);
      if (!numeric || index >= pairs.size() || seen[index]) {
        failure = "external scorer: unexpected response id '" + r.id + "'";
        break;
      }
      seen[index] = true;
      scores[index] = r.score;
      ++received;
    } catch (const Error &e) {
      failure = e.what();
      break;
    }
  }
  writer.join();
  if (!failure.empty()) throw Error(failure);
  if (received < pairs.size()) {
    throw Error("external scorer: stream closed after " + std::to_string(received) +
                " of " + std::to_string(pairs.size()) + " responses");
  }
  return scores;
}

ExternalScorerEncoder::ExternalScorerEncoder(std::string command)
    : command_(std::move(command)) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw Error("external scorer: pipe() failed");
  }
  pid_ = fork();
  if (pid_ < 0) throw Error("external scorer: fork() failed");
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  signal(SIGPIPE, SIG_IGN);
}

ExternalScorerEncoder::~ExternalScorerEncoder() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) waitpid(pid_, nullptr, 0);
}

FeatureVector ExternalScorerEncoder::Encode(const PairInput &pair) const {
  return EncodeBatch(std::span<const PairInput>(&pair, 1)).front();
}

std::vector<FeatureVector> ExternalScorerEncoder::EncodeBatch(
    std::span<const PairInput> pairs) const {
  // Non-owning stream wrappers over the pipe descriptors.
  __gnu_cxx::stdio_filebuf<char> out_buf(dup(to_child_), std::ios::out);
  __gnu_cxx::stdio_filebuf<char> in_buf(dup(from_child_), std::ios::in);
  std::ostream requests(&out_buf);
  std::istream responses(&in_buf);
  std::vector<double> scores = ScoreOverStreams(pairs, requests, responses);
  std::vector<FeatureVector> features;
  features.reserve(scores.size());
  for (double s : scores) features.push_back({s, 1.0});
  return features;
}

}  // namespace kbqa
