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

#ifndef KBQA_QUERY_GRAPH_H_
#define KBQA_QUERY_GRAPH_H_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbqa/focus_linking.h"
#include "kbqa/kb_store.h"
#include "kbqa/text.h"

namespace kbqa {

enum class AttachPoint { kAnswer, kMediator };

const char *AttachPointName(AttachPoint point);

// Relation chain from the focus entity to the answer variable. A two-hop
// path passes through a mediator variable bound during execution.
struct MainPath {
  EntityId focus;
  std::vector<RelationId> relations;

  bool two_hop() const { return relations.size() == 2; }
  bool operator==(const MainPath &) const = default;
};

struct EntityConstraint {
  AttachPoint attach = AttachPoint::kAnswer;
  RelationId relation;
  EntityId entity;

  auto operator<=>(const EntityConstraint &) const = default;
};

// Hard filter: the answer's notable types must contain the label.
struct TypeConstraint {
  TypeLabel type;

  bool operator==(const TypeConstraint &) const = default;
};

struct TimeConstraint {
  RelationId relation;
  Date value;
  Comparator comparator = Comparator::kEquals;
  AttachPoint attach = AttachPoint::kAnswer;

  bool operator==(const TimeConstraint &) const = default;
};

struct OrdinalConstraint {
  RelationId relation;
  int rank = 1;
  Direction direction = Direction::kMax;
  AttachPoint attach = AttachPoint::kAnswer;

  bool operator==(const OrdinalConstraint &) const = default;
};

struct QueryGraph {
  MainPath main;
  std::vector<EntityConstraint> entity_constraints;
  std::optional<TypeConstraint> type_constraint;
  std::optional<TimeConstraint> time_constraint;
  std::optional<OrdinalConstraint> ordinal_constraint;
  // Position in generation order; unique within a candidate set.
  int provenance = 0;

  // Structural identity: focus, relations and the sorted constraints.
  // Provenance is not part of the key.
  std::string CanonicalKey() const;

  nlohmann::json ToJson() const;
};

enum class SubPath { kMain = 0, kType, kEntity, kTime, kOrdinal };
inline constexpr int kSubPathCount = 5;

const char *SubPathName(SubPath sub_path);

// Flattened token form of a graph. Sections are laid out in the fixed order
// MainPath, TypePath, EntityPath, TimePath, OrdinalPath.
struct QueryGraphSequence {
  struct Span {
    size_t begin = 0;
    size_t end = 0;
    bool empty() const { return begin == end; }
  };

  std::vector<std::string> tokens;
  std::array<Span, kSubPathCount> sections;
  int main_hops = 0;

  const Span &section(SubPath sub_path) const {
    return sections[static_cast<int>(sub_path)];
  }
  std::vector<std::string> SectionTokens(SubPath sub_path) const;
  int ConstraintSectionCount() const;
  std::string Text() const { return JoinTokens(tokens); }
};

struct SearchLimits {
  size_t max_one_hop = 256;
  size_t max_two_hop = 1024;
};

// Counts and truncations for one question's generation run.
struct GenerationReport {
  size_t entity_links = 0;
  size_t main_paths = 0;
  size_t candidates = 0;
  std::vector<std::string> truncations;
  // Empty on success; "no entity link" or "no path" otherwise.
  std::string reason;

  nlohmann::json ToJson() const;
};

struct CandidateSet {
  Question question;
  std::vector<QueryGraph> graphs;
  GenerationReport report;
};

// A (mediator, answer) assignment satisfying the main path.
struct Binding {
  std::optional<EntityId> mediator;
  Node answer;
};

// One-hop and two-hop paths from every linked entity, in entity-link order
// and then relation load order, deduplicated. Expansions beyond `limits`
// are dropped and noted in `report`.
std::vector<MainPath> EnumerateMainPaths(const KnowledgeBase &kb,
                                         const FocusLinks &links,
                                         const SearchLimits &limits,
                                         GenerationReport *report = nullptr);

// Staged constraint expansion of one main path: entity constraints from the
// entity links other than the focus, then an optional type, time and
// ordinal constraint. Every combination of grounded options is returned,
// the bare path first. Provenance numbers are local to the returned list.
std::vector<QueryGraph> AttachConstraints(const KnowledgeBase &kb,
                                          const MainPath &main,
                                          const FocusLinks &links);

// Full candidate generation for a question. Graphs are deduplicated
// structurally and numbered 0..n-1 in generation order.
CandidateSet GenerateCandidates(const KnowledgeBase &kb, const Question &question,
                                const LinkingResources &resources,
                                const SearchLimits &limits);

// Same as above with links computed by the caller.
CandidateSet GenerateCandidates(const KnowledgeBase &kb, const Question &question,
                                const FocusLinks &links,
                                const SearchLimits &limits);

QueryGraphSequence Serialize(const QueryGraph &graph, const NameTable &names);

// Words used for a relation inside a graph sequence: the last
// dot-separated segment of its id split on '_'.
std::vector<std::string> RelationDisplayTokens(const RelationId &relation);

// All bindings of the main path variables, in traversal order.
std::vector<Binding> BindMainPath(const KnowledgeBase &kb, const MainPath &main);

// Answer nodes of the graph.
std::set<Node> Execute(const KnowledgeBase &kb, const QueryGraph &graph);

}  // namespace kbqa

#endif  // KBQA_QUERY_GRAPH_H_
