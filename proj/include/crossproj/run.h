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

// Batch driver behind the crossproj command line tool.

#ifndef CROSSPROJ_RUN_H_
#define CROSSPROJ_RUN_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "crossproj/aligner.h"

namespace crossproj {

enum class Command { kProject, kEvaluate, kDivergence, kStats };

std::string_view CommandName(Command command);

struct ReportFormats {
  bool json = true;
  bool tsv = true;
  bool csv = true;
};

// Parses a comma-separated list such as "json,tsv".
ReportFormats ParseFormats(std::string_view list);

struct RunConfig {
  Command command = Command::kProject;
  std::string corpus_path;
  std::optional<std::string> embeddings_path;
  // evaluate: score these projections instead of projecting in-process.
  std::optional<std::string> projections_path;
  // Source language; defaults to the source side of the first record.
  std::optional<std::string> direction;
  AlignerConfig aligner;
  // Unset picks the command default: embeddings for project and evaluate,
  // gold-if-present for divergence.
  std::optional<AlignmentSource> alignment;
  std::string out_dir = ".";
  ReportFormats formats;
  // Reject roles outside a frame's prototypical argument structure.
  bool strict_inventory = false;
  // Remove light-verb predicates before any processing.
  bool exclude_light_verbs = false;
  bool position_only = false;
  bool frame_only = false;
  int workers = 1;
};

// What a run wrote; also serialized into manifest.json.
struct RunManifest {
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  int nonconverged = 0;
};

// Exit statuses of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command, writing reports and manifest.json into out_dir. Data
// errors are reported on `err` with file and line context.
int RunCommand(const RunConfig &config, std::ostream &err);

// Same, but throws crossproj::Error (annotated with the input path).
RunManifest Execute(const RunConfig &config);

std::string Sha256Hex(std::string_view bytes);

}  // namespace crossproj

#endif  // CROSSPROJ_RUN_H_
