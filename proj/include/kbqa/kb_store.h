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

#ifndef KBQA_KB_STORE_H_
#define KBQA_KB_STORE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace kbqa {

// Identifier of an entity node, e.g. "m.united_states". Mediator (CVT) nodes
// are ordinary entities; fixtures name them with a "cvt_" prefix.
struct EntityId {
  std::string id;

  auto operator<=>(const EntityId &) const = default;
};

// Identifier of a relation, e.g. "government.office_holder".
struct RelationId {
  std::string id;

  // The id split on '.' and '_', lowercased, in order.
  std::vector<std::string> tokens() const;

  auto operator<=>(const RelationId &) const = default;
};

// A notable-type label such as "tv actor". Stored lowercased with single
// spaces between words.
struct TypeLabel {
  std::string label;

  TypeLabel() = default;
  explicit TypeLabel(std::string_view text);

  std::vector<std::string> tokens() const;

  auto operator<=>(const TypeLabel &) const = default;
};

// Calendar date with optional month and day.
struct Date {
  int year = 0;
  std::optional<int> month;
  std::optional<int> day;

  // Parses YYYY, YYYY-MM or YYYY-MM-DD; returns nullopt on malformed input.
  static std::optional<Date> Parse(std::string_view text);

  std::string ToString() const;

  // Total order used for sorting; a missing field sorts before any value.
  auto operator<=>(const Date &) const = default;
};

// Constraint comparison of two dates. Fields are compared lexicographically
// and the comparison stops at the first field missing on either side, so
// "2000" compares equal to "2000-05-01". Returns <0, 0 or >0.
int CompareDatesPartial(const Date &a, const Date &b);

struct StringLiteral {
  std::string text;

  auto operator<=>(const StringLiteral &) const = default;
};

struct NumberLiteral {
  double value = 0;

  auto operator<=>(const NumberLiteral &) const = default;
};

// A node of the knowledge graph: an entity or a literal value.
using Node = std::variant<EntityId, StringLiteral, NumberLiteral, Date>;

inline bool IsEntity(const Node &node) {
  return std::holds_alternative<EntityId>(node);
}

// Text rendering of literals: numbers in shortest round-trip form, dates as
// YYYY[-MM[-DD]]. Entities render as their id.
std::string RenderNode(const Node &node);

struct Triple {
  EntityId subject;
  RelationId predicate;
  Node object;
};

// Outgoing edge of an entity.
struct Edge {
  RelationId relation;
  Node object;
};

// Incoming edge of an entity: the triple's predicate and subject.
struct BackEdge {
  RelationId relation;
  EntityId subject;
};

}  // namespace kbqa

template <>
struct std::hash<kbqa::EntityId> {
  size_t operator()(const kbqa::EntityId &e) const noexcept {
    return std::hash<std::string>()(e.id);
  }
};

namespace kbqa {

// Immutable in-memory triple store with forward (subject) and backward
// (entity object) indices and a notable-type table. Lookups of absent ids
// return empty spans.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Builds the indices. `types` pairs are registered in order; a repeated
  // (entity, label) pair is stored once.
  KnowledgeBase(std::vector<Triple> triples,
                const std::vector<std::pair<EntityId, TypeLabel>> &types);

  // Reads a triples TSV (subject, predicate, object[, object_kind]) and a
  // types TSV (entity, type_label). Throws LoadError or ParseError.
  static KnowledgeBase Load(const std::string &triples_path,
                            const std::string &types_path);

  std::span<const Edge> ForwardEdges(const EntityId &entity) const;
  std::span<const BackEdge> BackwardEdges(const EntityId &entity) const;
  std::span<const TypeLabel> NotableTypes(const EntityId &entity) const;

  const std::vector<Triple> &triples() const { return triples_; }

  // Every distinct type label, in order of first registration.
  const std::vector<TypeLabel> &type_labels() const { return type_labels_; }

  // Every entity that appears as a subject or entity object, sorted.
  const std::vector<EntityId> &entities() const { return entities_; }

  size_t forward_index_size() const;
  size_t backward_index_size() const;
  size_t relation_count() const;

 private:
  std::vector<Triple> triples_;
  std::unordered_map<EntityId, std::vector<Edge>> forward_;
  std::unordered_map<EntityId, std::vector<BackEdge>> backward_;
  std::unordered_map<EntityId, std::vector<TypeLabel>> types_;
  std::vector<TypeLabel> type_labels_;
  std::vector<EntityId> entities_;
};

// Parses one triples-file line. Exposed for testing.
Triple ParseTripleFields(const std::vector<std::string_view> &fields,
                         const std::string &path, int line);

// Display names of entities, used for serialization and answer rendering.
class NameTable {
 public:
  NameTable() = default;

  // Reads `entity_id<TAB>display name` lines.
  static NameTable Load(const std::string &path);

  void Add(const EntityId &entity, std::string name);

  // The display name, or nullptr when none is registered.
  const std::string *Find(const EntityId &entity) const;

  // Lowercase name tokens, falling back to the id's tokens without the
  // "m." namespace prefix.
  std::vector<std::string> NameTokens(const EntityId &entity) const;

  // Display name of an entity (falling back to its id) or the literal
  // rendering of any other node.
  std::string Render(const Node &node) const;

 private:
  std::unordered_map<EntityId, std::string> names_;
};

}  // namespace kbqa

#endif  // KBQA_KB_STORE_H_
