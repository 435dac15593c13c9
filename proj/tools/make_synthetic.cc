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


// Writes the synthetic evaluation corpus: a KB, names, lexicon, embeddings,
// ordinals, train/valid/test splits and a config. Each question names a focus
// entity and two topic words; a gold relation and a distractor relation of a
// different answer type hang off the focus. In hard questions the distractor
// name overlaps the question more than the gold one does, so lexical matching
// alone prefers a wrongly typed answer.

#include <algorithm>
#include <cmath>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbqa/dataset.h"

namespace {

struct TypeClass {
  const char *intent;
  const char *prefix;
  std::vector<std::vector<const char *>> type_sets;
};

const std::array<TypeClass, 3> kClasses = {{
    {"who", "m.person_", {{"person", "tv actor"}, {"person", "politician"}, {"person"}}},
    {"what", "m.work_", {{"award nominated work", "film"}, {"film"}, {"award nominated work"}}},
    {"where", "m.place_", {{"location", "city"}, {"location"}}},
}};

const std::vector<const char *> kTopicWords = {
    "founder", "leader", "origin",  "base",    "home",   "source", "maker",
    "owner",   "center", "member",  "partner", "branch", "rival",  "patron",
    "anchor",  "keeper", "signal",  "window",  "harbor", "summit", "mentor",
    "guide",   "herald", "pillar",  "beacon",  "crown",  "forge",  "bridge",
    "garden",  "lantern"};

const char *kSyllables[] = {"ka", "lo", "mi", "ru", "ten", "va", "zo", "pel", "dra",
                            "nu", "sor", "bi", "ge", "fa", "quin", "tor", "wy", "xe"};

using Rng = std::mt19937_64;

size_t Pick(Rng &rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

std::string PseudoWord(Rng &rng, std::set<std::string> &used) {
  for (;;) {
    std::string word;
    int syllables = 2 + static_cast<int>(Pick(rng, 2));
    for (int i = 0; i < syllables; ++i) word += kSyllables[Pick(rng, std::size(kSyllables))];
    if (used.insert(word).second) return word;
  }
}

std::string Capitalize(std::string word) {
  word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

struct Entity {
  std::string id;
  std::string name;
  int type_class = 0;
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Generate the synthetic KBQA corpus"};
  std::string out_dir = "data/synthetic";
  uint64_t seed = 2026;
  int questions = 200;
  double hard_fraction = 0.4;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--questions", questions, "Number of questions");
  app.add_option("--hard-fraction", hard_fraction,
                 "Fraction of questions whose distractor overlaps the question more");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  std::filesystem::create_directories(out_dir);
  std::set<std::string> used_words;
  for (const char *w : kTopicWords) used_words.insert(w);

  std::array<std::vector<Entity>, 3> answers;
  const std::array<int, 3> pool_sizes = {120, 80, 80};
  std::ofstream types(out_dir + "/types.tsv");
  std::ofstream names(out_dir + "/names.tsv");
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < pool_sizes[c]; ++i) {
      Entity e{kClasses[c].prefix + std::to_string(i), "", c};
      e.name = Capitalize(PseudoWord(rng, used_words)) + " " +
               Capitalize(PseudoWord(rng, used_words));
      const auto &type_set = kClasses[c].type_sets[Pick(rng, kClasses[c].type_sets.size())];
      for (const char *t : type_set) types << e.id << '\t' << t << '\n';
      names << e.id << '\t' << e.name << '\n';
      answers[c].push_back(e);
    }
  }

  std::ofstream triples(out_dir + "/triples.tsv");
  std::ofstream lexicon(out_dir + "/lexicon.tsv");
  triples << "# Synthetic corpus KB.\n";
  for (const Entity &person : answers[0]) {
    const Entity &place = answers[2][Pick(rng, answers[2].size())];
    triples << person.id << "\tpeople.place_of_birth\t" << place.id << '\n';
  }

  auto emit = [&](const std::string &focus, const std::string &relation, int type_class,
                  int count) {
    std::vector<std::string> names_out;
    std::set<size_t> chosen;
    while (static_cast<int>(chosen.size()) < count) chosen.insert(Pick(rng, answers[type_class].size()));
    for (size_t i : chosen) {
      triples << focus << '\t' << relation << '\t' << answers[type_class][i].id << '\n';
      names_out.push_back(answers[type_class][i].name);
    }
    return names_out;
  };

  std::vector<kbqa::QAPair> pairs;
  int hard_count = static_cast<int>(hard_fraction * questions + 0.5);
  std::vector<bool> hard(questions, false);
  std::fill(hard.begin(), hard.begin() + hard_count, true);
  std::shuffle(hard.begin(), hard.end(), rng);
  for (int q = 0; q < questions; ++q) {
    std::string word = PseudoWord(rng, used_words);
    std::string focus = "m.topic_" + std::to_string(q);
    names << focus << '\t' << Capitalize(word) << '\n';
    lexicon << word << '\t' << focus << '\n';

    int gold_class = static_cast<int>(Pick(rng, 3));
    int distractor_class = (gold_class + 1 + static_cast<int>(Pick(rng, 2))) % 3;
    size_t w1 = Pick(rng, kTopicWords.size());
    size_t w2 = (w1 + 1 + Pick(rng, kTopicWords.size() - 1)) % kTopicWords.size();
    std::string short_rel = std::string("common.") + kTopicWords[w1];
    std::string long_rel = short_rel + "_" + kTopicWords[w2];
    const std::string &gold_rel = hard[q] ? short_rel : long_rel;
    const std::string &distractor_rel = hard[q] ? long_rel : short_rel;

    auto gold = emit(focus, gold_rel, gold_class, 1 + static_cast<int>(Pick(rng, 2)));
    emit(focus, distractor_rel, distractor_class, 1 + static_cast<int>(Pick(rng, 2)));
    for (int k = 0; k < 2; ++k) {
      size_t w = Pick(rng, kTopicWords.size());
      while (w == w1 || w == w2) w = Pick(rng, kTopicWords.size());
      emit(focus, std::string("common.") + kTopicWords[w], static_cast<int>(Pick(rng, 3)), 1);
    }

    std::string text = std::string(kClasses[gold_class].intent) + " is the " +
                       kTopicWords[w1] + " " + kTopicWords[w2] + " of " + word;
    pairs.push_back({"syn-" + std::to_string(q), text, gold});
  }

  // Intent words and type words share three intent dimensions; topic words
  // live in the remaining five.
  constexpr int kDim = 8;
  std::vector<std::pair<std::string, std::vector<double>>> vectors = {
      {"who", {0.5, 0, 0, 0, 0, 0, 0, 0}},
      {"what", {0, 0.5, 0, 0, 0, 0, 0, 0}},
      {"where", {0, 0, 0.5, 0, 0, 0, 0, 0}},
      {"person", {0.5, 0, 0.05, 0, 0, 0, 0, 0}},
      {"tv", {0.4, 0.1, 0, 0, 0, 0, 0, 0}},
      {"actor", {0.5, 0.05, 0, 0, 0, 0, 0, 0}},
      {"politician", {0.45, 0, 0.1, 0, 0, 0, 0, 0}},
      {"award", {0.05, 0.45, 0, 0, 0, 0, 0, 0}},
      {"nominated", {0.1, 0.4, 0, 0, 0, 0, 0, 0}},
      {"work", {0, 0.5, 0.05, 0, 0, 0, 0, 0}},
      {"film", {0.05, 0.5, 0, 0, 0, 0, 0, 0}},
      {"location", {0, 0.05, 0.5, 0, 0, 0, 0, 0}},
      {"city", {0.05, 0, 0.5, 0, 0, 0, 0, 0}},
      {"place", {0, 0, 0.45, 0, 0, 0, 0, 0}},
      {"birth", {0.1, 0, 0.1, 0, 0, 0, 0, 0}},
  };
  std::normal_distribution<double> normal(0.0, 1.0);
  for (const char *w : kTopicWords) {
    std::vector<double> v(kDim, 0.0);
    double norm = 0;
    for (int i = 3; i < kDim; ++i) {
      v[i] = normal(rng);
      norm += v[i] * v[i];
    }
    for (int i = 3; i < kDim; ++i) v[i] /= std::sqrt(norm);
    vectors.emplace_back(w, v);
  }
  std::ofstream embeddings(out_dir + "/embeddings.txt");
  embeddings << vectors.size() << ' ' << kDim << '\n';
  embeddings.precision(6);
  for (const auto &[word, v] : vectors) {
    embeddings << word;
    for (double x : v) embeddings << ' ' << x;
    embeddings << '\n';
  }

  std::ofstream ordinals(out_dir + "/ordinals.tsv");
  const char *ordinal_words[] = {"first", "second", "third", "fourth", "fifth",
                                 "sixth", "seventh", "eighth", "ninth", "tenth"};
  for (int i = 0; i < 10; ++i) ordinals << ordinal_words[i] << '\t' << i + 1 << '\n';

  size_t n_train = pairs.size() * 3 / 5;
  size_t n_valid = pairs.size() / 5;
  std::span<const kbqa::QAPair> all(pairs);
  kbqa::SaveDataset(out_dir + "/train.jsonl", all.subspan(0, n_train));
  kbqa::SaveDataset(out_dir + "/valid.jsonl", all.subspan(n_train, n_valid));
  kbqa::SaveDataset(out_dir + "/test.jsonl", all.subspan(n_train + n_valid));

  nlohmann::ordered_json config = {
      {"kb_triples", "triples.tsv"},   {"kb_types", "types.tsv"},
      {"names", "names.tsv"},          {"lexicon", "lexicon.tsv"},
      {"embeddings", "embeddings.txt"}, {"ordinal_dict", "ordinals.tsv"},
      {"train", "train.jsonl"},        {"valid", "valid.jsonl"},
      {"test", "test.jsonl"},          {"negatives_per_positive", 10},
      {"learning_rate", 0.1},          {"epochs", 20},
      {"seed", 7},                     {"top_n", 10},
      {"type_links_k", 10},
  };
  std::ofstream(out_dir + "/config.json") << config.dump(2) << '\n';
  std::cout << "wrote " << pairs.size() << " questions (" << hard_count << " hard) to "
            << out_dir << '\n';
  return 0;
}
