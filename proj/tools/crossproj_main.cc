// Copyright 2026 The Crossproj Authors.
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

// crossproj: annotation projection, evaluation and divergence analysis over
// JSON-lines parallel corpora.
//
//   crossproj project    --corpus c.jsonl --embeddings e.cpeb --out dir
//   crossproj evaluate   --corpus c.jsonl --projections dir/projections.jsonl
//   crossproj divergence --corpus c.jsonl --direction zh
//   crossproj stats      --corpus c.jsonl
//
// CROSSPROJ_WORKERS bounds the number of worker threads.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "crossproj/error.h"
#include "crossproj/run.h"
#include "crossproj/version.h"

namespace {

using crossproj::AlignerMode;
using crossproj::AlignmentSource;
using crossproj::Command;
using crossproj::RunConfig;

struct Flags {
  std::string corpus;
  std::string embeddings;
  std::string projections;
  std::string direction;
  std::string aligner = "topk";
  std::string alignment;
  std::string formats = "json,tsv,csv";
  RunConfig config;
};

void AddCommon(CLI::App *cmd, Flags &f) {
  cmd->add_option("--corpus", f.corpus, "JSON-lines corpus")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--embeddings", f.embeddings, "CPEB word-piece embeddings")
      ->check(CLI::ExistingFile);
  cmd->add_option("--direction", f.direction, "source language code");
  cmd->add_option("--out", f.config.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--format", f.formats, "subset of json,tsv,csv")
      ->capture_default_str();
  cmd->add_flag("--strict-inventory", f.config.strict_inventory,
                "reject roles outside the frame's argument structure");
  cmd->add_flag("--exclude-light-verbs", f.config.exclude_light_verbs,
                "drop light-verb predicates before processing");
}

void AddAligner(CLI::App *cmd, Flags &f) {
  crossproj::AlignerConfig &a = f.config.aligner;
  cmd->add_option("--aligner", f.aligner, "topk or ot")
      ->check(CLI::IsMember({"topk", "ot"}))
      ->capture_default_str();
  cmd->add_option("--alignment", f.alignment,
                  "link source: embeddings, gold or auto")
      ->check(CLI::IsMember({"embeddings", "gold", "auto"}));
  cmd->add_option("--k", a.k, "top-k candidates")->capture_default_str();
  cmd->add_option("--epsilon", a.epsilon, "entropic regularization")
      ->capture_default_str();
  cmd->add_option("--threshold", a.threshold, "intersection cutoff")
      ->capture_default_str();
  cmd->add_option("--temperature", a.temperature, "softmax temperature")
      ->capture_default_str();
  cmd->add_option("--max-iters", a.max_iters, "Sinkhorn iteration cap")
      ->capture_default_str();
  cmd->add_option("--tol", a.tol, "Sinkhorn marginal tolerance")
      ->capture_default_str();
}

// Returns 0 for unset, -1 for an invalid value.
int WorkersFromEnv() {
  const char *env = std::getenv("CROSSPROJ_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  char *end = nullptr;
  long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) return -1;
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Cross-lingual predicate-argument projection and analysis"};
  app.set_version_flag("--version", crossproj::kVersion);
  app.require_subcommand(1);

  Flags f;
  auto *project = app.add_subcommand("project", "project source annotations");
  AddCommon(project, f);
  AddAligner(project, f);

  auto *evaluate =
      app.add_subcommand("evaluate", "score projections against target gold");
  AddCommon(evaluate, f);
  AddAligner(evaluate, f);
  evaluate
      ->add_option("--projections", f.projections,
                   "projections.jsonl from a project run")
      ->check(CLI::ExistingFile);
  evaluate->add_flag("--position-only", f.config.position_only,
                     "score predicates on position alone");
  evaluate->add_flag("--frame-only", f.config.frame_only,
                     "category 1 on frame equality alone");

  auto *divergence =
      app.add_subcommand("divergence", "classify predicate divergences");
  AddCommon(divergence, f);
  AddAligner(divergence, f);
  divergence->add_flag("--frame-only", f.config.frame_only,
                       "category 1 on frame equality alone");

  auto *stats = app.add_subcommand("stats", "corpus predicate statistics");
  AddCommon(stats, f);

  try {
    app.parse(argc, argv);
    int workers = WorkersFromEnv();
    if (workers < 0) {
      throw CLI::ValidationError("CROSSPROJ_WORKERS",
                                 "must be a positive integer");
    }
    f.config.workers =
        workers > 0 ? workers
                    : static_cast<int>(
                          std::max(1u, std::thread::hardware_concurrency()));
    f.config.formats = crossproj::ParseFormats(f.formats);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "crossproj: " << e.what() << "\n\n" << app.help();
    return crossproj::kExitUsage;
  } catch (const crossproj::Error &e) {
    std::cerr << "crossproj: " << e.detail() << "\n\n" << app.help();
    return crossproj::kExitUsage;
  }

  RunConfig &config = f.config;
  if (project->parsed()) config.command = Command::kProject;
  if (evaluate->parsed()) config.command = Command::kEvaluate;
  if (divergence->parsed()) config.command = Command::kDivergence;
  if (stats->parsed()) config.command = Command::kStats;
  config.corpus_path = f.corpus;
  if (!f.embeddings.empty()) config.embeddings_path = f.embeddings;
  if (!f.projections.empty()) config.projections_path = f.projections;
  if (!f.direction.empty()) config.direction = f.direction;
  config.aligner.mode =
      f.aligner == "ot" ? AlignerMode::kOtBidir : AlignerMode::kTopkS2t;
  try {
    config.aligner.Validate();
  } catch (const crossproj::Error &e) {
    std::cerr << "crossproj: " << e.detail() << "\n\n" << app.help();
    return crossproj::kExitUsage;
  }
  static const std::map<std::string, AlignmentSource> kSources = {
      {"embeddings", AlignmentSource::kEmbeddings},
      {"gold", AlignmentSource::kGold},
      {"auto", AlignmentSource::kGoldIfPresent}};
  if (!f.alignment.empty()) config.alignment = kSources.at(f.alignment);
  return crossproj::RunCommand(config, std::cerr);
}
