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

// Rendering of evaluation, divergence and corpus statistics reports.
//
// JSON reports keep full precision; TSV and CSV tables show P/R/F1 with two
// decimals and percentages with one. Output depends only on the arguments.

#ifndef CROSSPROJ_REPORT_H_
#define CROSSPROJ_REPORT_H_

#include <span>
#include <string>
#include <vector>

#include "crossproj/divergence.h"
#include "crossproj/evaluator.h"
#include "crossproj/projector.h"

namespace crossproj {

struct Direction {
  std::string source_lang;
  std::string target_lang;
};

// Rows as produced by MergeByLabel; an Overall row is appended.
std::string EvaluationTsv(std::span<const EvalCounts> rows);
std::string EvaluationJson(const Direction &direction,
                           std::span<const EvalCounts> rows);

struct PairFrameDiff {
  std::string pair_id;
  std::vector<FrameDiffRecord> records;
};

std::string FrameDiffTsv(std::span<const PairFrameDiff> diffs);
std::string FrameDiffJson(const Direction &direction,
                          std::span<const PairFrameDiff> diffs);

// Counts of dropped source items by kind and reason.
std::string DropSummaryTsv(std::span<const ProjectedAnnotation> projected);

std::string DivergenceRecordsTsv(std::span<const DivergenceRecord> records);
std::string DivergenceJson(const DistributionReport &report,
                           std::span<const DivergenceRecord> records);
std::string CategoriesTsv(const DistributionReport &report);
std::string SubtypesCsv(const DistributionReport &report);
std::string UntranslatedTsv(std::span<const UntranslatedVerb> verbs);

std::string VerbCountsTsv(const Direction &direction,
                          const VerbCountComparison &counts);
std::string HistogramCsv(const Direction &direction,
                         const VerbCountComparison &counts);
std::string FramesTsv(const Direction &direction,
                      const FrameInventoryDiff &frames);
std::string StatsJson(const Direction &direction,
                      const VerbCountComparison &counts,
                      const FrameInventoryDiff &frames, int64_t source_total,
                      int64_t target_total);

}  // namespace crossproj

#endif  // CROSSPROJ_REPORT_H_
