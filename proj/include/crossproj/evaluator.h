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

#ifndef CROSSPROJ_EVALUATOR_H_
#define CROSSPROJ_EVALUATOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crossproj/corpus.h"
#include "crossproj/divergence.h"
#include "crossproj/projector.h"

namespace crossproj {

inline constexpr std::string_view kPredicatesLabel = "predicates";
inline constexpr std::string_view kOverallLabel = "Overall";

struct EvalCounts {
  std::string label;
  int64_t correct = 0;
  int64_t false_pos = 0;
  int64_t false_neg = 0;

  EvalCounts &operator+=(const EvalCounts &other);
  bool operator==(const EvalCounts &) const = default;
};

// Percentages in [0, 100]. A zero denominator yields 0.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf ComputePrf(const EvalCounts &counts);

// The same three values rounded half-up to two decimals. Rounding is done
// on the exact rational value, so 75.675 rounds to 75.68.
Prf RoundedPrf(const EvalCounts &counts);

// Half-up rounding of num/den to `digits` decimals; den > 0.
double RoundRatioHalfUp(int64_t num, int64_t den, int digits);

struct ScoreOptions {
  // Count a predicate correct on position alone, ignoring the frame.
  bool position_only = false;
};

// Per-label tallies: "predicates" first, then every role seen on either
// side in byte order. Throws kSentenceMismatch when the tokens differ.
std::vector<EvalCounts> ScorePair(const ProjectedAnnotation &projected,
                                  const Sentence &gold,
                                  const ScoreOptions &options = {});

// Component-wise sum, labeled "Overall".
EvalCounts Aggregate(std::span<const EvalCounts> counts);

// Sums tallies label by label. Output: "predicates" first, then `roles` in
// order (absent labels as zero rows), then any other label in byte order.
std::vector<EvalCounts> MergeByLabel(
    std::span<const std::vector<EvalCounts>> per_pair,
    std::span<const std::string> roles);

struct FrameDiffRecord {
  int token = 0;
  std::string verb;
  std::optional<std::string> projected_frame;
  std::optional<std::string> gold_frame;
  Category category = Category::kMisalignment;

  bool operator==(const FrameDiffRecord &) const = default;
};

// Divergence classifications feeding the frame diff. `forward` classifies
// the source predicates of the projection; `reverse` classifies the
// target's gold predicates with the target as source.
struct CategoryLookup {
  std::span<const DivergenceRecord> forward;
  std::span<const DivergenceRecord> reverse;
};

// One record per target position where projected and gold frames differ,
// including a frame missing on either side, in token order.
std::vector<FrameDiffRecord> DiffProjectedFrames(
    const ProjectedAnnotation &projected, const Sentence &gold,
    const CategoryLookup &categories);

}  // namespace crossproj

#endif  // CROSSPROJ_EVALUATOR_H_
