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

// Command-line front end: kb-stats, link, generate, train-rank, train-rerank,
// answer, eval, oracle-curve.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbqa/config.h"
#include "kbqa/dataset.h"
#include "kbqa/error.h"
#include "kbqa/model_io.h"
#include "kbqa/pipeline.h"

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int> top_n;
  std::optional<int> negatives;
};

kbqa::Config LoadConfig(const Options &options) {
  kbqa::Config config = kbqa::Config::Load(options.config_path);
  if (options.seed) config.training.seed = *options.seed;
  if (options.top_n) config.training.top_n = *options.top_n;
  if (options.negatives) config.training.negatives_per_positive = *options.negatives;
  return config;
}

std::string SplitPath(const kbqa::Config &config, const std::string &split) {
  if (split == "train") return config.train;
  if (split == "valid") return config.valid;
  if (split == "test") return config.test;
  throw kbqa::Error("unknown split '" + split + "'");
}

void WriteText(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw kbqa::LoadError("cannot write " + path);
  out << text;
}

json MentionJson(const kbqa::Mention &m) {
  return {{"start", m.start}, {"end", m.end}, {"text", m.text}};
}

json LinksJson(const kbqa::FocusLinks &links) {
  json out = {{"entities", json::array()},
              {"types", json::array()},
              {"times", json::array()},
              {"ordinals", json::array()}};
  for (const auto &l : links.entities) {
    out["entities"].push_back(
        {{"mention", MentionJson(l.mention)}, {"entity", l.entity.id}, {"score", l.link_score}});
  }
  for (const auto &l : links.types) {
    out["types"].push_back({{"mention", MentionJson(l.mention)},
                            {"type", l.type.label},
                            {"similarity", l.similarity}});
  }
  for (const auto &l : links.times) {
    out["times"].push_back({{"mention", MentionJson(l.mention)},
                            {"value", l.value.ToString()},
                            {"comparator", kbqa::ComparatorName(l.comparator)}});
  }
  for (const auto &l : links.ordinals) {
    out["ordinals"].push_back({{"mention", MentionJson(l.mention)},
                               {"rank", l.rank},
                               {"direction", kbqa::DirectionName(l.direction)},
                               {"trigger", l.trigger}});
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Knowledge-base question answering over query graphs"};
  app.require_subcommand(1);
  Options options;
  app.add_option("--config", options.config_path, "JSON config file")->required();
  app.add_option("--seed", options.seed, "Override training seed");
  app.add_option("--top-n", options.top_n, "Override top-n for reranking");
  app.add_option("--negatives", options.negatives, "Override negatives per positive");

  auto *kb_stats = app.add_subcommand("kb-stats", "Print knowledge base statistics");

  std::string question;
  auto *link = app.add_subcommand("link", "Show focus links of a question");
  link->add_option("question", question)->required();

  bool report = false;
  auto *generate = app.add_subcommand("generate", "List candidate query graphs");
  generate->add_option("question", question)->required();
  generate->add_flag("--report", report, "Print the generation report as JSON");

  std::string out_path, rank_path, rerank_path, split = "test", csv_path;
  bool no_type = false;
  auto *train_rank = app.add_subcommand("train-rank", "Train the ranking head");
  train_rank->add_option("--out", out_path, "Model file to write")->required();

  auto *train_rerank = app.add_subcommand("train-rerank", "Train the reranking heads");
  train_rerank->add_option("--rank-model", rank_path)->required();
  train_rerank->add_option("--out", out_path)->required();
  train_rerank->add_flag("--no-type-feature", no_type, "Ablate the answer-type head");

  auto *answer = app.add_subcommand("answer", "Answer a question");
  answer->add_option("question", question)->required();
  answer->add_option("--rank-model", rank_path)->required();
  answer->add_option("--rerank-model", rerank_path, "Omit for ranking-only answers");

  auto *eval = app.add_subcommand("eval", "Average P/R/F1 over a split");
  eval->add_option("--rank-model", rank_path)->required();
  eval->add_option("--rerank-model", rerank_path, "Omit for ranking top-1");
  eval->add_option("--split", split)->check(CLI::IsMember({"train", "valid", "test"}));
  eval->add_option("--csv", csv_path, "Per-question CSV output");

  int n_max = 50;
  auto *oracle = app.add_subcommand("oracle-curve", "Oracle F1 of top-n ranked candidates");
  oracle->add_option("--rank-model", rank_path)->required();
  oracle->add_option("--split", split)->check(CLI::IsMember({"train", "valid", "test"}));
  oracle->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  oracle->add_option("--out", out_path, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    kbqa::Config config = LoadConfig(options);
    kbqa::Resources resources = kbqa::Resources::Load(config);
    auto encoder = kbqa::MakeEncoder(config, resources);
    const int dimension = encoder->dimension();
    const int top_n = config.training.top_n;

    if (*kb_stats) {
      const auto &kb = resources.kb;
      json stats = {{"triples", kb.triples().size()},
                    {"entities", kb.entities().size()},
                    {"relations", kb.relation_count()},
                    {"type_labels", kb.type_labels().size()},
                    {"forward_index", kb.forward_index_size()},
                    {"backward_index", kb.backward_index_size()}};
      std::cout << stats.dump(2) << "\n";
    } else if (*link) {
      auto q = kbqa::Question::FromText(question);
      std::cout << LinksJson(kbqa::LinkAll(q, resources.linking)).dump(2) << "\n";
    } else if (*generate) {
      auto q = kbqa::Question::FromText(question);
      auto candidates = kbqa::GenerateCandidates(resources.kb, q, resources.linking,
                                                 resources.limits);
      for (const auto &g : candidates.graphs) {
        std::cout << g.provenance << "\t" << kbqa::Serialize(g, resources.names).Text()
                  << "\n";
      }
      if (report) std::cout << candidates.report.ToJson().dump() << "\n";
    } else if (*train_rank) {
      auto train = kbqa::LoadDataset(config.train);
      auto valid = kbqa::LoadDataset(config.valid);
      auto train_q = kbqa::PrepareQuestions(resources, *encoder, train);
      auto valid_q = kbqa::PrepareQuestions(resources, *encoder, valid);
      auto model = kbqa::TrainRanker(train_q, valid_q, config.training, dimension);
      kbqa::SaveRankModel(out_path, model.head);
      std::cerr << "best epoch " << model.best_epoch << ", validation top-1 F1 "
                << model.validation_f1[model.best_epoch] << "\n";
    } else if (*train_rerank) {
      auto rank_head = kbqa::LoadRankModel(rank_path);
      auto train = kbqa::LoadDataset(config.train);
      auto valid = kbqa::LoadDataset(config.valid);
      auto train_q = kbqa::PrepareQuestions(resources, *encoder, train);
      auto valid_q = kbqa::PrepareQuestions(resources, *encoder, valid);
      auto train_lists = kbqa::BuildRerankTraining(rank_head, train_q, top_n);
      auto valid_lists = kbqa::BuildRerankTraining(rank_head, valid_q, top_n);
      kbqa::TrainConfig training = config.training;
      training.use_type_feature = !no_type;
      auto model = kbqa::TrainReranker(train_q, train_lists, valid_q, valid_lists,
                                       training, dimension);
      kbqa::SaveRerankModel(out_path, model);
      std::cerr << "best epoch " << model.best_epoch << ", validation top-1 F1 "
                << model.validation_f1[model.best_epoch] << "\n";
    } else if (*answer) {
      auto rank_head = kbqa::LoadRankModel(rank_path);
      std::optional<kbqa::RerankModel> rerank;
      if (!rerank_path.empty()) rerank = kbqa::LoadRerankModel(rerank_path);
      auto result = kbqa::Answer(question, resources, *encoder, rank_head,
                                 rerank ? &*rerank : nullptr, top_n);
      for (const auto &a : result.answers) std::cout << a << "\n";
      std::cerr << result.trace.dump(2) << "\n";
    } else if (*eval) {
      auto rank_head = kbqa::LoadRankModel(rank_path);
      std::optional<kbqa::RerankModel> rerank;
      if (!rerank_path.empty()) rerank = kbqa::LoadRerankModel(rerank_path);
      auto pairs = kbqa::LoadDataset(SplitPath(config, split));
      auto questions = kbqa::PrepareQuestions(resources, *encoder, pairs);
      auto result = kbqa::EvaluatePrepared(questions, rank_head,
                                           rerank ? &*rerank : nullptr, top_n);
      if (!csv_path.empty()) WriteText(csv_path, kbqa::EvalCsv(questions, result));
      std::printf("P %.2f  R %.2f  F1 %.2f  (%zu questions)\n",
                  100 * result.avg_precision, 100 * result.avg_recall,
                  100 * result.avg_f1, questions.size());
    } else if (*oracle) {
      auto rank_head = kbqa::LoadRankModel(rank_path);
      auto pairs = kbqa::LoadDataset(SplitPath(config, split));
      auto questions = kbqa::PrepareQuestions(resources, *encoder, pairs);
      auto curve = kbqa::OracleCurve(kbqa::RankedF1(questions, rank_head), n_max);
      WriteText(out_path, kbqa::OracleCurveCsv(curve));
    }
  } catch (const kbqa::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
