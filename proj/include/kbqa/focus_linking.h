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

#ifndef KBQA_FOCUS_LINKING_H_
#define KBQA_FOCUS_LINKING_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "kbqa/embeddings.h"
#include "kbqa/kb_store.h"
#include "kbqa/text.h"

namespace kbqa {

// Token span [start, end) of a question.
struct Mention {
  int start = 0;
  int end = 0;
  std::string text;

  bool Overlaps(const Mention &other) const {
    return start < other.end && other.start < end;
  }
  bool operator==(const Mention &) const = default;
};

struct EntityLink {
  Mention mention;
  EntityId entity;
  double link_score = 0;
};

struct TypeLink {
  Mention mention;
  TypeLabel type;
  double similarity = 0;
};

enum class Comparator { kEquals, kBefore, kAfter };
enum class Direction { kMax, kMin };

const char *ComparatorName(Comparator comparator);
const char *DirectionName(Direction direction);

struct TimeLink {
  Mention mention;
  Date value;
  Comparator comparator = Comparator::kEquals;
};

struct OrdinalLink {
  Mention mention;
  int rank = 1;
  Direction direction = Direction::kMax;
  std::string trigger;
};

struct FocusLinks {
  std::vector<EntityLink> entities;
  std::vector<TypeLink> types;
  std::vector<TimeLink> times;
  std::vector<OrdinalLink> ordinals;
};

// Alias table mapping lowercase token sequences to candidate entities.
class AliasLexicon {
 public:
  // Reads `alias<TAB>entity_id` lines; an alias may repeat.
  static AliasLexicon Load(const std::string &path);

  void Add(std::string_view alias, const EntityId &entity);

  // Entities registered for the exact token sequence, or nullptr.
  const std::vector<EntityId> *Lookup(std::span<const std::string> tokens) const;

  int max_alias_length() const { return max_alias_length_; }
  bool empty() const { return aliases_.empty(); }

 private:
  std::unordered_map<std::string, std::vector<EntityId>> aliases_;
  int max_alias_length_ = 0;
};

// Ordinal words such as "first" -> 1, "second" -> 2.
class OrdinalDictionary {
 public:
  // Reads `word<TAB>rank` lines.
  static OrdinalDictionary Load(const std::string &path);

  void Add(const std::string &word, int rank);
  const int *Find(const std::string &word) const;

 private:
  std::unordered_map<std::string, int> ranks_;
};

// Everything the linkers read.
struct LinkingResources {
  AliasLexicon lexicon;
  WordEmbeddings embeddings;
  std::vector<TypeLabel> kb_types;
  OrdinalDictionary ordinals;
  int type_k = 10;
};

// Longest-match alias linking. Overlapping matches are resolved by longer
// span first, then leftmost start. Each surviving span yields one link per
// entity registered for the alias, ordered by span start and then by
// lexicon row order.
std::vector<EntityLink> LinkEntities(const Question &question,
                                     const AliasLexicon &lexicon);

// Scores every (sub-sequence of 1..3 tokens, type) pair by the cosine of
// mean embeddings and returns the k best, ties broken by earlier mention
// start, shorter mention, then type label.
std::vector<TypeLink> LinkTypes(const Question &question,
                                const WordEmbeddings &embeddings,
                                const std::vector<TypeLabel> &kb_types, int k);

// Four-digit years 1000-2999; "after"/"since" and "before"/"until" directly
// preceding the year set the comparator.
std::vector<TimeLink> LinkTimes(const Question &question);

// Superlatives (an "-est" word or an irregular form such as "most"),
// optionally preceded by an ordinal word giving the rank.
std::vector<OrdinalLink> LinkOrdinals(const Question &question,
                                      const OrdinalDictionary &ordinals);

bool IsSuperlative(const std::string &token);

FocusLinks LinkAll(const Question &question, const LinkingResources &resources);

}  // namespace kbqa

#endif  // KBQA_FOCUS_LINKING_H_
