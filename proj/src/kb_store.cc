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

#include "kbqa/kb_store.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "kbqa/error.h"
#include "kbqa/text.h"
#include "kbqa/tsv.h"

namespace kbqa {

namespace {

bool ParseInt(std::string_view text, int *out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto result = std::from_chars(text.data(), text.data() + text.size(), *out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

}  // namespace

std::vector<std::string> RelationId::tokens() const {
  return SplitIdentifier(id);
}

TypeLabel::TypeLabel(std::string_view text) : label(JoinTokens(Tokenize(text))) {}

std::vector<std::string> TypeLabel::tokens() const { return Tokenize(label); }

std::optional<Date> Date::Parse(std::string_view text) {
  Date date;
  std::string_view parts[3];
  int count = 0;
  size_t start = 0;
  while (count < 3) {
    size_t dash = text.find('-', start);
    parts[count++] = text.substr(start, dash - start);
    if (dash == std::string_view::npos) {
      start = text.size() + 1;
      break;
    }
    start = dash + 1;
  }
  if (start <= text.size()) return std::nullopt;  // more than three parts
  if (parts[0].size() != 4 || !ParseInt(parts[0], &date.year)) {
    return std::nullopt;
  }
  if (count >= 2) {
    int month;
    if (parts[1].size() != 2 || !ParseInt(parts[1], &month)) return std::nullopt;
    if (month < 1 || month > 12) return std::nullopt;
    date.month = month;
  }
  if (count == 3) {
    int day;
    if (parts[2].size() != 2 || !ParseInt(parts[2], &day)) return std::nullopt;
    if (day < 1 || day > 31) return std::nullopt;
    date.day = day;
  }
  return date;
}

std::string Date::ToString() const {
  char buffer[32];
  if (month && day) {
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", year, *month, *day);
  } else if (month) {
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d", year, *month);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%04d", year);
  }
  return buffer;
}

int CompareDatesPartial(const Date &a, const Date &b) {
  if (a.year != b.year) return a.year < b.year ? -1 : 1;
  if (!a.month || !b.month) return 0;
  if (*a.month != *b.month) return *a.month < *b.month ? -1 : 1;
  if (!a.day || !b.day) return 0;
  if (*a.day != *b.day) return *a.day < *b.day ? -1 : 1;
  return 0;
}

std::string RenderNode(const Node &node) {
  struct Visitor {
    std::string operator()(const EntityId &e) const { return e.id; }
    std::string operator()(const StringLiteral &s) const { return s.text; }
    std::string operator()(const NumberLiteral &n) const {
      char buffer[64];
      auto result = std::to_chars(buffer, buffer + sizeof(buffer), n.value);
      return std::string(buffer, result.ptr);
    }
    std::string operator()(const Date &d) const { return d.ToString(); }
  };
  return std::visit(Visitor{}, node);
}

Triple ParseTripleFields(const std::vector<std::string_view> &fields,
                         const std::string &path, int line) {
  if (fields.size() < 3 || fields.size() > 4) {
    throw ParseError(path, line, "expected 3 or 4 tab-separated fields");
  }
  for (size_t i = 0; i < fields.size(); ++i) {
    if (fields[i].empty()) throw ParseError(path, line, "empty field");
  }
  Triple triple{EntityId{std::string(fields[0])},
                RelationId{std::string(fields[1])}, Node{}};
  std::string_view object = fields[2];
  std::string_view kind = fields.size() == 4 ? fields[3] : "entity";
  if (kind == "entity") {
    triple.object = EntityId{std::string(object)};
  } else if (kind == "string") {
    triple.object = StringLiteral{std::string(object)};
  } else if (kind == "number") {
    double value;
    auto result =
        std::from_chars(object.data(), object.data() + object.size(), value);
    if (result.ec != std::errc() || result.ptr != object.data() + object.size()) {
      throw ParseError(path, line, "malformed number '" + std::string(object) + "'");
    }
    triple.object = NumberLiteral{value};
  } else if (kind == "date") {
    auto date = Date::Parse(object);
    if (!date) {
      throw ParseError(path, line, "malformed date '" + std::string(object) + "'");
    }
    triple.object = *date;
  } else {
    throw ParseError(path, line, "unknown object kind '" + std::string(kind) + "'");
  }
  return triple;
}

KnowledgeBase::KnowledgeBase(
    std::vector<Triple> triples,
    const std::vector<std::pair<EntityId, TypeLabel>> &types)
    : triples_(std::move(triples)) {
  std::set<EntityId> entities;
  for (const Triple &t : triples_) {
    forward_[t.subject].push_back(Edge{t.predicate, t.object});
    entities.insert(t.subject);
    if (const auto *object = std::get_if<EntityId>(&t.object)) {
      backward_[*object].push_back(BackEdge{t.predicate, t.subject});
      entities.insert(*object);
    }
  }
  entities_.assign(entities.begin(), entities.end());

  std::set<TypeLabel> seen_labels;
  for (const auto &[entity, label] : types) {
    auto &list = types_[entity];
    if (std::find(list.begin(), list.end(), label) == list.end()) {
      list.push_back(label);
    }
    if (seen_labels.insert(label).second) type_labels_.push_back(label);
  }
}

KnowledgeBase KnowledgeBase::Load(const std::string &triples_path,
                                  const std::string &types_path) {
  std::vector<Triple> triples;
  ForEachTsvLine(triples_path,
                 [&](int line, const std::vector<std::string_view> &fields) {
                   triples.push_back(ParseTripleFields(fields, triples_path, line));
                 });
  std::vector<std::pair<EntityId, TypeLabel>> types;
  ForEachTsvLine(types_path,
                 [&](int line, const std::vector<std::string_view> &fields) {
                   if (fields.size() != 2 || fields[0].empty() ||
                       fields[1].empty()) {
                     throw ParseError(types_path, line,
                                      "expected entity<TAB>type_label");
                   }
                   TypeLabel label(fields[1]);
                   if (label.label.empty()) {
                     throw ParseError(types_path, line, "empty type label");
                   }
                   types.emplace_back(EntityId{std::string(fields[0])}, label);
                 });
  return KnowledgeBase(std::move(triples), types);
}

std::span<const Edge> KnowledgeBase::ForwardEdges(const EntityId &entity) const {
  auto it = forward_.find(entity);
  if (it == forward_.end()) return {};
  return it->second;
}

std::span<const BackEdge> KnowledgeBase::BackwardEdges(
    const EntityId &entity) const {
  auto it = backward_.find(entity);
  if (it == backward_.end()) return {};
  return it->second;
}

std::span<const TypeLabel> KnowledgeBase::NotableTypes(
    const EntityId &entity) const {
  auto it = types_.find(entity);
  if (it == types_.end()) return {};
  return it->second;
}

size_t KnowledgeBase::forward_index_size() const {
  size_t total = 0;
  for (const auto &[_, edges] : forward_) total += edges.size();
  return total;
}

size_t KnowledgeBase::backward_index_size() const {
  size_t total = 0;
  for (const auto &[_, edges] : backward_) total += edges.size();
  return total;
}

size_t KnowledgeBase::relation_count() const {
  std::set<std::string_view> relations;
  for (const Triple &t : triples_) relations.insert(t.predicate.id);
  return relations.size();
}

NameTable NameTable::Load(const std::string &path) {
  NameTable table;
  ForEachTsvLine(path, [&](int line, const std::vector<std::string_view> &fields) {
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, line, "expected entity_id<TAB>display name");
    }
    table.Add(EntityId{std::string(fields[0])}, std::string(fields[1]));
  });
  return table;
}

void NameTable::Add(const EntityId &entity, std::string name) {
  names_[entity] = std::move(name);
}

const std::string *NameTable::Find(const EntityId &entity) const {
  auto it = names_.find(entity);
  return it == names_.end() ? nullptr : &it->second;
}

std::vector<std::string> NameTable::NameTokens(const EntityId &entity) const {
  if (const std::string *name = Find(entity)) return Tokenize(*name);
  std::string_view id = entity.id;
  if (id.starts_with("m.")) id.remove_prefix(2);
  return SplitIdentifier(id);
}

std::string NameTable::Render(const Node &node) const {
  if (const auto *entity = std::get_if<EntityId>(&node)) {
    if (const std::string *name = Find(*entity)) return *name;
  }
  return RenderNode(node);
}

}  // namespace kbqa
