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

#include "kbqa/query_graph.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace kbqa {

namespace {

std::string RankWord(int rank) {
  static const char *kWords[] = {"first", "second", "third", "fourth",
                                 "fifth", "sixth",  "seventh", "eighth",
                                 "ninth", "tenth"};
  if (rank >= 1 && rank <= 10) return kWords[rank - 1];
  return std::to_string(rank);
}

std::string PathKey(const MainPath &path) {
  std::string key = path.focus.id;
  for (const RelationId &r : path.relations) {
    key += '|';
    key += r.id;
  }
  return key;
}

void Append(std::vector<std::string> &out, std::vector<std::string> tokens) {
  out.insert(out.end(), std::make_move_iterator(tokens.begin()),
             std::make_move_iterator(tokens.end()));
}

// Distinct nodes bound at an attach point, in binding order.
std::vector<EntityId> AttachEntities(const std::vector<Binding> &bindings,
                                     AttachPoint point) {
  std::vector<EntityId> nodes;
  std::unordered_set<EntityId> seen;
  for (const Binding &b : bindings) {
    const EntityId *node = nullptr;
    if (point == AttachPoint::kMediator) {
      if (b.mediator) node = &*b.mediator;
    } else {
      node = std::get_if<EntityId>(&b.answer);
    }
    if (node != nullptr && seen.insert(*node).second) nodes.push_back(*node);
  }
  return nodes;
}

const EntityId *NodeAt(const Binding &binding, AttachPoint point) {
  if (point == AttachPoint::kMediator) {
    return binding.mediator ? &*binding.mediator : nullptr;
  }
  return std::get_if<EntityId>(&binding.answer);
}

// Relations of the attach point's nodes whose objects satisfy `accept`, in
// order of first appearance.
template <typename Pred>
std::vector<RelationId> LiteralRelations(const KnowledgeBase &kb,
                                         const std::vector<EntityId> &nodes,
                                         Pred accept) {
  std::vector<RelationId> relations;
  for (const EntityId &node : nodes) {
    for (const Edge &edge : kb.ForwardEdges(node)) {
      if (!accept(edge.object)) continue;
      if (std::find(relations.begin(), relations.end(), edge.relation) ==
          relations.end()) {
        relations.push_back(edge.relation);
      }
    }
  }
  return relations;
}

std::vector<AttachPoint> AttachPoints(const MainPath &main) {
  if (main.two_hop()) return {AttachPoint::kAnswer, AttachPoint::kMediator};
  return {AttachPoint::kAnswer};
}

bool SatisfiesComparator(const Date &value, const Date &target,
                         Comparator comparator) {
  int cmp = CompareDatesPartial(value, target);
  switch (comparator) {
    case Comparator::kEquals: return cmp == 0;
    case Comparator::kBefore: return cmp < 0;
    case Comparator::kAfter: return cmp > 0;
  }
  return false;
}

}  // namespace

const char *AttachPointName(AttachPoint point) {
  return point == AttachPoint::kAnswer ? "answer" : "mediator";
}

const char *SubPathName(SubPath sub_path) {
  switch (sub_path) {
    case SubPath::kMain: return "MainPath";
    case SubPath::kType: return "TypePath";
    case SubPath::kEntity: return "EntityPath";
    case SubPath::kTime: return "TimePath";
    case SubPath::kOrdinal: return "OrdinalPath";
  }
  return "";
}

std::string QueryGraph::CanonicalKey() const {
  std::ostringstream key;
  key << PathKey(main);
  std::vector<EntityConstraint> sorted = entity_constraints;
  std::sort(sorted.begin(), sorted.end());
  for (const EntityConstraint &c : sorted) {
    key << "|E:" << AttachPointName(c.attach) << ':' << c.relation.id << ':'
        << c.entity.id;
  }
  if (type_constraint) key << "|T:" << type_constraint->type.label;
  if (time_constraint) {
    key << "|D:" << AttachPointName(time_constraint->attach) << ':'
        << time_constraint->relation.id << ':'
        << ComparatorName(time_constraint->comparator) << ':'
        << time_constraint->value.ToString();
  }
  if (ordinal_constraint) {
    key << "|O:" << AttachPointName(ordinal_constraint->attach) << ':'
        << ordinal_constraint->relation.id << ':'
        << DirectionName(ordinal_constraint->direction) << ':'
        << ordinal_constraint->rank;
  }
  return key.str();
}

nlohmann::json QueryGraph::ToJson() const {
  nlohmann::json out;
  out["provenance"] = provenance;
  out["focus"] = main.focus.id;
  nlohmann::json relations = nlohmann::json::array();
  for (const RelationId &r : main.relations) relations.push_back(r.id);
  out["relations"] = relations;
  nlohmann::json entities = nlohmann::json::array();
  for (const EntityConstraint &c : entity_constraints) {
    entities.push_back({{"attach", AttachPointName(c.attach)},
                        {"relation", c.relation.id},
                        {"entity", c.entity.id}});
  }
  out["entity_constraints"] = entities;
  if (type_constraint) out["type_constraint"] = type_constraint->type.label;
  if (time_constraint) {
    out["time_constraint"] = {
        {"attach", AttachPointName(time_constraint->attach)},
        {"relation", time_constraint->relation.id},
        {"comparator", ComparatorName(time_constraint->comparator)},
        {"value", time_constraint->value.ToString()}};
  }
  if (ordinal_constraint) {
    out["ordinal_constraint"] = {
        {"attach", AttachPointName(ordinal_constraint->attach)},
        {"relation", ordinal_constraint->relation.id},
        {"direction", DirectionName(ordinal_constraint->direction)},
        {"rank", ordinal_constraint->rank}};
  }
  return out;
}

std::vector<std::string> QueryGraphSequence::SectionTokens(SubPath sub_path) const {
  const Span &span = section(sub_path);
  return std::vector<std::string>(tokens.begin() + span.begin,
                                  tokens.begin() + span.end);
}

int QueryGraphSequence::ConstraintSectionCount() const {
  int count = 0;
  for (int i = 1; i < kSubPathCount; ++i) {
    if (!sections[i].empty()) ++count;
  }
  return count;
}

nlohmann::json GenerationReport::ToJson() const {
  return {{"entity_links", entity_links},
          {"main_paths", main_paths},
          {"candidates", candidates},
          {"truncations", truncations},
          {"reason", reason}};
}

std::vector<MainPath> EnumerateMainPaths(const KnowledgeBase &kb,
                                         const FocusLinks &links,
                                         const SearchLimits &limits,
                                         GenerationReport *report) {
  std::vector<MainPath> paths;
  std::unordered_set<std::string> seen_paths;
  std::unordered_set<EntityId> seen_entities;
  auto add = [&](MainPath path) {
    if (seen_paths.insert(PathKey(path)).second) paths.push_back(std::move(path));
  };
  auto truncated = [&](const EntityId &entity, const char *what, size_t limit) {
    if (report != nullptr) {
      report->truncations.push_back(entity.id + ": " + what + " limit " +
                                    std::to_string(limit) + " reached");
    }
  };

  for (const EntityLink &link : links.entities) {
    const EntityId &focus = link.entity;
    if (!seen_entities.insert(focus).second) continue;
    std::span<const Edge> first_hop = kb.ForwardEdges(focus);
    if (first_hop.size() > limits.max_one_hop) {
      truncated(focus, "one-hop", limits.max_one_hop);
      first_hop = first_hop.first(limits.max_one_hop);
    }
    for (const Edge &edge : first_hop) {
      add(MainPath{focus, {edge.relation}});
    }
    size_t expansions = 0;
    bool stop = false;
    for (const Edge &edge : first_hop) {
      const auto *mediator = std::get_if<EntityId>(&edge.object);
      if (mediator == nullptr) continue;
      for (const Edge &second : kb.ForwardEdges(*mediator)) {
        if (expansions == limits.max_two_hop) {
          truncated(focus, "two-hop", limits.max_two_hop);
          stop = true;
          break;
        }
        ++expansions;
        add(MainPath{focus, {edge.relation, second.relation}});
      }
      if (stop) break;
    }
  }
  if (report != nullptr) report->main_paths = paths.size();
  return paths;
}

std::vector<QueryGraph> AttachConstraints(const KnowledgeBase &kb,
                                          const MainPath &main,
                                          const FocusLinks &links) {
  const std::vector<Binding> bindings = BindMainPath(kb, main);
  const std::vector<AttachPoint> points = AttachPoints(main);
  std::map<AttachPoint, std::vector<EntityId>> nodes;
  std::map<AttachPoint, std::unordered_set<EntityId>> node_sets;
  for (AttachPoint point : points) {
    nodes[point] = AttachEntities(bindings, point);
    node_sets[point] = {nodes[point].begin(), nodes[point].end()};
  }

  // Stage 1: entity constraints, at most one per remaining entity link.
  std::vector<std::vector<EntityConstraint>> entity_options = {{}};
  std::unordered_set<EntityId> used_entities = {main.focus};
  for (const EntityLink &link : links.entities) {
    if (!used_entities.insert(link.entity).second) continue;
    std::vector<EntityConstraint> grounded;
    for (AttachPoint point : points) {
      for (const BackEdge &edge : kb.BackwardEdges(link.entity)) {
        if (!node_sets[point].contains(edge.subject)) continue;
        EntityConstraint c{point, edge.relation, link.entity};
        if (std::find(grounded.begin(), grounded.end(), c) == grounded.end()) {
          grounded.push_back(c);
        }
      }
    }
    if (grounded.empty()) continue;
    std::vector<std::vector<EntityConstraint>> expanded;
    for (const auto &base : entity_options) {
      expanded.push_back(base);
      for (const EntityConstraint &c : grounded) {
        expanded.push_back(base);
        expanded.back().push_back(c);
      }
    }
    entity_options = std::move(expanded);
  }

  // Stage 2: type constraint on the answer node.
  std::vector<std::optional<TypeConstraint>> type_options = {std::nullopt};
  for (const TypeLink &link : links.types) {
    TypeConstraint c{link.type};
    if (std::find(type_options.begin(), type_options.end(), c) !=
        type_options.end()) {
      continue;
    }
    bool grounded = false;
    for (const EntityId &answer : nodes[AttachPoint::kAnswer]) {
      auto types = kb.NotableTypes(answer);
      if (std::find(types.begin(), types.end(), link.type) != types.end()) {
        grounded = true;
        break;
      }
    }
    if (grounded) type_options.push_back(c);
  }

  // Stage 3: time constraint on a date-valued relation.
  std::vector<std::optional<TimeConstraint>> time_options = {std::nullopt};
  for (const TimeLink &link : links.times) {
    for (AttachPoint point : points) {
      auto relations = LiteralRelations(kb, nodes[point], [](const Node &n) {
        return std::holds_alternative<Date>(n);
      });
      for (const RelationId &r : relations) {
        TimeConstraint c{r, link.value, link.comparator, point};
        if (std::find(time_options.begin(), time_options.end(), c) ==
            time_options.end()) {
          time_options.push_back(c);
        }
      }
    }
  }

  // Stage 4: ordinal constraint on a number- or date-valued relation.
  std::vector<std::optional<OrdinalConstraint>> ordinal_options = {std::nullopt};
  for (const OrdinalLink &link : links.ordinals) {
    for (AttachPoint point : points) {
      auto relations = LiteralRelations(kb, nodes[point], [](const Node &n) {
        return std::holds_alternative<Date>(n) ||
               std::holds_alternative<NumberLiteral>(n);
      });
      for (const RelationId &r : relations) {
        OrdinalConstraint c{r, link.rank, link.direction, point};
        if (std::find(ordinal_options.begin(), ordinal_options.end(), c) ==
            ordinal_options.end()) {
          ordinal_options.push_back(c);
        }
      }
    }
  }

  std::vector<QueryGraph> graphs;
  std::unordered_set<std::string> seen;
  for (const auto &entities : entity_options) {
    for (const auto &type : type_options) {
      for (const auto &time : time_options) {
        for (const auto &ordinal : ordinal_options) {
          QueryGraph g{main, entities, type, time, ordinal, 0};
          if (!seen.insert(g.CanonicalKey()).second) continue;
          g.provenance = static_cast<int>(graphs.size());
          graphs.push_back(std::move(g));
        }
      }
    }
  }
  return graphs;
}

CandidateSet GenerateCandidates(const KnowledgeBase &kb, const Question &question,
                                const FocusLinks &links,
                                const SearchLimits &limits) {
  CandidateSet set;
  set.question = question;
  set.report.entity_links = links.entities.size();
  if (links.entities.empty()) {
    set.report.reason = "no entity link";
    return set;
  }
  std::vector<MainPath> paths = EnumerateMainPaths(kb, links, limits, &set.report);
  if (paths.empty()) {
    set.report.reason = "no path";
    return set;
  }
  std::unordered_set<std::string> seen;
  for (const MainPath &path : paths) {
    for (QueryGraph &g : AttachConstraints(kb, path, links)) {
      if (!seen.insert(g.CanonicalKey()).second) continue;
      g.provenance = static_cast<int>(set.graphs.size());
      set.graphs.push_back(std::move(g));
    }
  }
  set.report.candidates = set.graphs.size();
  return set;
}

CandidateSet GenerateCandidates(const KnowledgeBase &kb, const Question &question,
                                const LinkingResources &resources,
                                const SearchLimits &limits) {
  return GenerateCandidates(kb, question, LinkAll(question, resources), limits);
}

std::vector<std::string> RelationDisplayTokens(const RelationId &relation) {
  std::string_view id = relation.id;
  size_t dot = id.rfind('.');
  if (dot != std::string_view::npos) id.remove_prefix(dot + 1);
  return SplitIdentifier(id);
}

QueryGraphSequence Serialize(const QueryGraph &graph, const NameTable &names) {
  QueryGraphSequence seq;
  seq.main_hops = static_cast<int>(graph.main.relations.size());
  auto &tokens = seq.tokens;
  auto section = [&](SubPath sub_path, auto &&fill) {
    auto &span = seq.sections[static_cast<int>(sub_path)];
    span.begin = tokens.size();
    fill();
    span.end = tokens.size();
  };

  section(SubPath::kMain, [&] {
    Append(tokens, names.NameTokens(graph.main.focus));
    for (const RelationId &r : graph.main.relations) {
      Append(tokens, RelationDisplayTokens(r));
    }
    tokens.push_back("a");
  });
  section(SubPath::kType, [&] {
    if (graph.type_constraint) Append(tokens, graph.type_constraint->type.tokens());
  });
  section(SubPath::kEntity, [&] {
    for (const EntityConstraint &c : graph.entity_constraints) {
      Append(tokens, RelationDisplayTokens(c.relation));
      Append(tokens, names.NameTokens(c.entity));
    }
  });
  section(SubPath::kTime, [&] {
    if (const auto &c = graph.time_constraint) {
      Append(tokens, RelationDisplayTokens(c->relation));
      tokens.push_back(ComparatorName(c->comparator));
      tokens.push_back(c->value.ToString());
    }
  });
  section(SubPath::kOrdinal, [&] {
    if (const auto &c = graph.ordinal_constraint) {
      Append(tokens, RelationDisplayTokens(c->relation));
      tokens.push_back(DirectionName(c->direction));
      tokens.push_back(RankWord(c->rank));
    }
  });
  return seq;
}

std::vector<Binding> BindMainPath(const KnowledgeBase &kb, const MainPath &main) {
  std::vector<Binding> bindings;
  if (main.relations.empty()) return bindings;
  for (const Edge &edge : kb.ForwardEdges(main.focus)) {
    if (edge.relation != main.relations[0]) continue;
    if (!main.two_hop()) {
      bindings.push_back(Binding{std::nullopt, edge.object});
      continue;
    }
    const auto *mediator = std::get_if<EntityId>(&edge.object);
    if (mediator == nullptr) continue;
    for (const Edge &second : kb.ForwardEdges(*mediator)) {
      if (second.relation == main.relations[1]) {
        bindings.push_back(Binding{*mediator, second.object});
      }
    }
  }
  return bindings;
}

std::set<Node> Execute(const KnowledgeBase &kb, const QueryGraph &graph) {
  std::vector<Binding> bindings = BindMainPath(kb, graph.main);

  auto keep_if = [&](auto pred) {
    std::erase_if(bindings, [&](const Binding &b) { return !pred(b); });
  };

  for (const EntityConstraint &c : graph.entity_constraints) {
    keep_if([&](const Binding &b) {
      const EntityId *node = NodeAt(b, c.attach);
      if (node == nullptr) return false;
      for (const Edge &edge : kb.ForwardEdges(*node)) {
        if (edge.relation != c.relation) continue;
        const auto *object = std::get_if<EntityId>(&edge.object);
        if (object != nullptr && *object == c.entity) return true;
      }
      return false;
    });
  }

  if (const auto &c = graph.type_constraint) {
    keep_if([&](const Binding &b) {
      const auto *answer = std::get_if<EntityId>(&b.answer);
      if (answer == nullptr) return false;
      auto types = kb.NotableTypes(*answer);
      return std::find(types.begin(), types.end(), c->type) != types.end();
    });
  }

  if (const auto &c = graph.time_constraint) {
    keep_if([&](const Binding &b) {
      const EntityId *node = NodeAt(b, c->attach);
      if (node == nullptr) return false;
      for (const Edge &edge : kb.ForwardEdges(*node)) {
        if (edge.relation != c->relation) continue;
        const auto *date = std::get_if<Date>(&edge.object);
        if (date != nullptr && SatisfiesComparator(*date, c->value, c->comparator)) {
          return true;
        }
      }
      return false;
    });
  }

  if (const auto &c = graph.ordinal_constraint) {
    // The first comparable value found fixes the kind (number or date);
    // bindings without a value of that kind are dropped.
    std::optional<size_t> kind;
    std::vector<std::pair<Node, Binding>> keyed;
    for (const Binding &b : bindings) {
      const EntityId *node = NodeAt(b, c->attach);
      if (node == nullptr) continue;
      std::optional<Node> key;
      for (const Edge &edge : kb.ForwardEdges(*node)) {
        if (edge.relation != c->relation) continue;
        const bool comparable = std::holds_alternative<NumberLiteral>(edge.object) ||
                                std::holds_alternative<Date>(edge.object);
        if (!comparable) continue;
        if (!kind) kind = edge.object.index();
        if (edge.object.index() != *kind) continue;
        if (!key || (c->direction == Direction::kMax ? *key < edge.object
                                                      : edge.object < *key)) {
          key = edge.object;
        }
      }
      if (key) keyed.emplace_back(*key, b);
    }
    std::set<Node> distinct;
    for (const auto &[key, _] : keyed) distinct.insert(key);
    bindings.clear();
    if (static_cast<size_t>(c->rank) <= distinct.size()) {
      auto it = c->direction == Direction::kMin
                    ? std::next(distinct.begin(), c->rank - 1)
                    : std::prev(distinct.end(), c->rank);
      for (auto &[key, b] : keyed) {
        if (key == *it) bindings.push_back(std::move(b));
      }
    }
  }

  std::set<Node> answers;
  for (Binding &b : bindings) answers.insert(std::move(b.answer));
  return answers;
}

}  // namespace kbqa
