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


// Independent reference implementations used as test oracles. They work on
// the raw triple list by linear scans and never touch the store's indices.

#ifndef KBQA_TESTS_ORACLES_H_
#define KBQA_TESTS_ORACLES_H_

#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kbqa/focus_linking.h"
#include "kbqa/kb_store.h"
#include "kbqa/query_graph.h"

namespace kbqa::oracle {

using TypePairs = std::vector<std::pair<EntityId, TypeLabel>>;

struct RandomKb {
  std::vector<Triple> triples;
  TypePairs types;
  std::vector<EntityId> entities;
  std::vector<TypeLabel> labels;
};

// At most `max_entities` entities and `max_relations` relations; objects mix
// entities, numbers (small range, so ties occur) and full or partial dates.
RandomKb MakeRandomKb(std::mt19937_64 &rng, int max_entities = 50,
                      int max_relations = 8);

// Random focus links over the KB's entities and labels.
FocusLinks MakeRandomLinks(std::mt19937_64 &rng, const RandomKb &kb);

// Every (focus, r) and (focus, r1, r2) path, as id lists.
std::set<std::vector<std::string>> AllPaths(const std::vector<Triple> &triples,
                                            const FocusLinks &links);

std::vector<std::string> PathIds(const MainPath &path);

struct OracleBinding {
  std::optional<EntityId> mediator;
  Node answer;
};

std::vector<OracleBinding> AllBindings(const std::vector<Triple> &triples,
                                       const MainPath &main);

std::set<Node> Evaluate(const std::vector<Triple> &triples, const TypePairs &types,
                        const QueryGraph &graph);

// Canonical keys of every graph in the cross product of groundable options.
std::set<std::string> ConstraintProduct(const std::vector<Triple> &triples,
                                        const TypePairs &types, const MainPath &main,
                                        const FocusLinks &links);

// Three-way partial date comparison written independently of the store.
int CompareDates(const Date &a, const Date &b);

// Mean cross-entropy of sigmoid(w.f + b [+ v.g + c]) written from the
// textbook formulas; `type_features` may be empty.
double ReferenceMeanLoss(const std::vector<std::vector<double>> &features,
                         const std::vector<std::vector<double>> &type_features,
                         const std::vector<int> &labels, const std::vector<double> &params);

// Central finite differences of f at x with step h.
std::vector<double> CentralDifference(
    const std::function<double(const std::vector<double> &)> &f, std::vector<double> x,
    double h);

// |a - b| relative to the larger magnitude, with a floor that keeps
// vanishing gradients from dividing by zero.
double RelativeError(double a, double b);

}  // namespace kbqa::oracle

#endif  // KBQA_TESTS_ORACLES_H_
