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

#include "kbqa/focus_linking.h"

#include <algorithm>
#include <charconv>
#include <regex>
#include <set>
#include <tuple>

#include "kbqa/error.h"
#include "kbqa/tsv.h"

namespace kbqa {

namespace {

Mention MakeMention(const Question &question, int start, int end) {
  std::span<const std::string> tokens(question.tokens);
  return Mention{start, end, JoinTokens(tokens.subspan(start, end - start))};
}

// Words ending in "-est" that are not superlatives.
const std::set<std::string> &NonSuperlatives() {
  static const std::set<std::string> words = {
      "arrest", "chest",   "contest",  "digest",  "east",    "forest",
      "guest",  "harvest", "honest",   "interest", "invest", "manifest",
      "modest", "nest",    "northwest", "pest",   "priest",  "protest",
      "quest",  "request", "rest",     "southwest", "suggest", "test",
      "vest",   "west",    "zest",     "conquest", "inquest", "unrest"};
  return words;
}

const std::set<std::string> &IrregularSuperlatives() {
  static const std::set<std::string> words = {"most", "least", "first", "last"};
  return words;
}

const std::set<std::string> &MinTriggers() {
  static const std::set<std::string> words = {
      "least", "lowest", "smallest", "earliest", "fewest", "shortest", "first"};
  return words;
}

}  // namespace

const char *ComparatorName(Comparator comparator) {
  switch (comparator) {
    case Comparator::kEquals: return "in";
    case Comparator::kBefore: return "before";
    case Comparator::kAfter: return "after";
  }
  return "in";
}

const char *DirectionName(Direction direction) {
  return direction == Direction::kMax ? "max" : "min";
}

AliasLexicon AliasLexicon::Load(const std::string &path) {
  AliasLexicon lexicon;
  ForEachTsvLine(path, [&](int line, const std::vector<std::string_view> &fields) {
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(path, line, "expected alias<TAB>entity_id");
    }
    lexicon.Add(fields[0], EntityId{std::string(fields[1])});
  });
  return lexicon;
}

void AliasLexicon::Add(std::string_view alias, const EntityId &entity) {
  std::vector<std::string> tokens = Tokenize(alias);
  if (tokens.empty()) return;
  auto &entities = aliases_[JoinTokens(tokens)];
  if (std::find(entities.begin(), entities.end(), entity) == entities.end()) {
    entities.push_back(entity);
  }
  max_alias_length_ = std::max(max_alias_length_, static_cast<int>(tokens.size()));
}

const std::vector<EntityId> *AliasLexicon::Lookup(
    std::span<const std::string> tokens) const {
  auto it = aliases_.find(JoinTokens(tokens));
  return it == aliases_.end() ? nullptr : &it->second;
}

OrdinalDictionary OrdinalDictionary::Load(const std::string &path) {
  OrdinalDictionary dictionary;
  ForEachTsvLine(path, [&](int line, const std::vector<std::string_view> &fields) {
    int rank = 0;
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError(path, line, "expected word<TAB>rank");
    }
    auto result = std::from_chars(fields[1].data(),
                                  fields[1].data() + fields[1].size(), rank);
    if (result.ec != std::errc() ||
        result.ptr != fields[1].data() + fields[1].size() || rank < 1) {
      throw ParseError(path, line, "rank must be a positive integer");
    }
    dictionary.Add(std::string(fields[0]), rank);
  });
  return dictionary;
}

void OrdinalDictionary::Add(const std::string &word, int rank) {
  ranks_[word] = rank;
}

const int *OrdinalDictionary::Find(const std::string &word) const {
  auto it = ranks_.find(word);
  return it == ranks_.end() ? nullptr : &it->second;
}

std::vector<EntityLink> LinkEntities(const Question &question,
                                     const AliasLexicon &lexicon) {
  const int n = static_cast<int>(question.tokens.size());
  std::span<const std::string> tokens(question.tokens);

  struct Match {
    int start, end;
    const std::vector<EntityId> *entities;
  };
  std::vector<Match> matches;
  for (int start = 0; start < n; ++start) {
    for (int len = 1; len <= lexicon.max_alias_length() && start + len <= n; ++len) {
      if (const auto *entities = lexicon.Lookup(tokens.subspan(start, len))) {
        matches.push_back({start, start + len, entities});
      }
    }
  }
  std::stable_sort(matches.begin(), matches.end(),
                   [](const Match &a, const Match &b) {
                     int la = a.end - a.start, lb = b.end - b.start;
                     if (la != lb) return la > lb;
                     return a.start < b.start;
                   });
  std::vector<Match> accepted;
  for (const Match &m : matches) {
    bool overlaps = std::any_of(accepted.begin(), accepted.end(),
                                [&](const Match &a) {
                                  return m.start < a.end && a.start < m.end;
                                });
    if (!overlaps) accepted.push_back(m);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Match &a, const Match &b) { return a.start < b.start; });

  std::vector<EntityLink> links;
  for (const Match &m : accepted) {
    Mention mention = MakeMention(question, m.start, m.end);
    // Exact alias matches only, so the span covers the whole alias.
    for (const EntityId &entity : *m.entities) {
      links.push_back(EntityLink{mention, entity, 1.0});
    }
  }
  return links;
}

std::vector<TypeLink> LinkTypes(const Question &question,
                                const WordEmbeddings &embeddings,
                                const std::vector<TypeLabel> &kb_types, int k) {
  if (k < 1) throw ContractError("LinkTypes requires k >= 1");
  const int n = static_cast<int>(question.tokens.size());
  std::span<const std::string> tokens(question.tokens);

  std::vector<std::vector<double>> type_means;
  type_means.reserve(kb_types.size());
  for (const TypeLabel &type : kb_types) {
    std::vector<std::string> type_tokens = type.tokens();
    type_means.push_back(embeddings.Mean(type_tokens));
  }

  std::vector<TypeLink> links;
  for (int start = 0; start < n; ++start) {
    for (int len = 1; len <= 3 && start + len <= n; ++len) {
      std::vector<double> mean = embeddings.Mean(tokens.subspan(start, len));
      Mention mention = MakeMention(question, start, start + len);
      for (size_t t = 0; t < kb_types.size(); ++t) {
        links.push_back(TypeLink{mention, kb_types[t], Cosine(mean, type_means[t])});
      }
    }
  }
  auto key = [](const TypeLink &l) {
    return std::make_tuple(-l.similarity, l.mention.start, l.mention.end,
                           std::cref(l.type.label));
  };
  std::sort(links.begin(), links.end(),
            [&](const TypeLink &a, const TypeLink &b) { return key(a) < key(b); });
  if (static_cast<int>(links.size()) > k) links.resize(k);
  return links;
}

std::vector<TimeLink> LinkTimes(const Question &question) {
  static const std::regex kYear("[12][0-9]{3}");
  std::vector<TimeLink> links;
  for (size_t i = 0; i < question.tokens.size(); ++i) {
    const std::string &token = question.tokens[i];
    if (!std::regex_match(token, kYear)) continue;
    TimeLink link;
    link.mention = MakeMention(question, static_cast<int>(i), static_cast<int>(i) + 1);
    link.value = Date{std::stoi(token), std::nullopt, std::nullopt};
    if (i > 0) {
      const std::string &previous = question.tokens[i - 1];
      if (previous == "after" || previous == "since") {
        link.comparator = Comparator::kAfter;
      } else if (previous == "before" || previous == "until") {
        link.comparator = Comparator::kBefore;
      }
    }
    links.push_back(std::move(link));
  }
  return links;
}

bool IsSuperlative(const std::string &token) {
  if (IrregularSuperlatives().contains(token)) return true;
  return token.size() >= 4 && token.ends_with("est") &&
         !NonSuperlatives().contains(token);
}

std::vector<OrdinalLink> LinkOrdinals(const Question &question,
                                      const OrdinalDictionary &ordinals) {
  std::vector<OrdinalLink> links;
  const int n = static_cast<int>(question.tokens.size());
  for (int i = 0; i < n; ++i) {
    const std::string &token = question.tokens[i];
    if (!IsSuperlative(token)) continue;
    OrdinalLink link;
    link.trigger = token;
    link.direction =
        MinTriggers().contains(token) ? Direction::kMin : Direction::kMax;
    int start = i;
    if (i > 0) {
      if (const int *rank = ordinals.Find(question.tokens[i - 1])) {
        link.rank = *rank;
        start = i - 1;
      }
    }
    link.mention = MakeMention(question, start, i + 1);
    links.push_back(std::move(link));
  }
  return links;
}

FocusLinks LinkAll(const Question &question, const LinkingResources &resources) {
  FocusLinks links;
  links.entities = LinkEntities(question, resources.lexicon);
  if (!resources.kb_types.empty()) {
    links.types = LinkTypes(question, resources.embeddings, resources.kb_types,
                            resources.type_k);
  }
  links.times = LinkTimes(question);
  links.ordinals = LinkOrdinals(question, resources.ordinals);
  return links;
}

}  // namespace kbqa
