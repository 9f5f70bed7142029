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

// Predicate divergence taxonomy for parallel sentences.
//
// Every source predicate falls in exactly one category, decided by the
// target tokens it is linked to:
//
//   1 frame convergence   linked to a target predicate with the same frame
//                         and sense
//   2 frame divergence    linked to target predicates, none matching
//   3 non-verbal          linked only to non-verb tokens; the subtype comes
//                         from the token POS, or `phrase` for several tokens
//   4 misalignment        no usable target counterpart
//
// Target tokens tagged VERB that carry no predicate (modal and light verbs
// are not annotated) and OTHER tokens (punctuation) are not counterparts.

#ifndef CROSSPROJ_DIVERGENCE_H_
#define CROSSPROJ_DIVERGENCE_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crossproj/aligner.h"
#include "crossproj/corpus.h"

namespace crossproj {

enum class Category {
  kFrameConvergence = 1,
  kFrameDivergence = 2,
  kNonVerbal = 3,
  kMisalignment = 4,
};

std::string_view CategoryName(Category category);

enum class NonVerbalSubtype {
  kNominal,
  kPhrase,
  kPreposition,
  kAdjective,
  kAuxiliary,
  kAdverb,
};

std::string_view SubtypeName(NonVerbalSubtype subtype);

struct DivergenceRecord {
  std::string pair_id;
  // Index into the source sentence's predicates.
  int predicate = 0;
  int source_token = 0;
  std::string verb;
  std::string frame;
  Category category = Category::kMisalignment;
  // Representative target counterpart, absent for category 4.
  std::optional<int> target_token;
  // Present iff category is kNonVerbal.
  std::optional<NonVerbalSubtype> subtype;

  bool operator==(const DivergenceRecord &) const = default;
};

struct ClassifyOptions {
  // Category 1 on frame equality alone, ignoring senses.
  bool frame_only = false;
};

DivergenceRecord ClassifyPredicate(const SentencePair &pair,
                                   int predicate_index,
                                   const TokenAlignment &alignment,
                                   const ClassifyOptions &options = {});

// One record per source predicate, in predicate order.
std::vector<DivergenceRecord> ClassifyPair(const SentencePair &pair,
                                           const TokenAlignment &alignment,
                                           const ClassifyOptions &options = {});

struct CategoryStat {
  int64_t count = 0;
  double percent = 0.0;  // of all source predicates, unrounded

  bool operator==(const CategoryStat &) const = default;
};

struct VerbCountComparison {
  int64_t source_more = 0;
  int64_t equal = 0;
  int64_t source_fewer = 0;
  // histogram[n] = number of sentences with n predicates.
  std::vector<int64_t> source_histogram;
  std::vector<int64_t> target_histogram;

  bool operator==(const VerbCountComparison &) const = default;
};

struct SharedFrame {
  std::string frame;
  int64_t source_count = 0;
  int64_t target_count = 0;
  double source_percent = 0.0;
  double target_percent = 0.0;

  bool operator==(const SharedFrame &) const = default;
};

struct FrameInventoryDiff {
  std::vector<std::string> only_source;  // sorted
  std::vector<std::string> only_target;  // sorted
  // Sorted by combined count descending, then label.
  std::vector<SharedFrame> shared;

  bool operator==(const FrameInventoryDiff &) const = default;
};

struct DistributionReport {
  std::string source_lang;
  std::string target_lang;
  int64_t source_predicates = 0;
  int64_t target_predicates = 0;
  // Index 0 is category 1.
  std::array<CategoryStat, 4> categories{};
  // Category 3 split by subtype; nominal vs the rest gives the NE/non-NE
  // split.
  std::map<NonVerbalSubtype, int64_t> subtypes;
  VerbCountComparison verb_counts;
  FrameInventoryDiff frames;

  bool operator==(const DistributionReport &) const = default;
};

// Aggregates classifications of every source predicate of `pairs`. Throws
// kCoverageGap when a predicate has no record or more than one.
DistributionReport Distribution(std::span<const SentencePair> pairs,
                                std::span<const DivergenceRecord> records);

// Category statistics from counts alone.
std::array<CategoryStat, 4> CategoryStats(std::array<int64_t, 4> counts);

FrameInventoryDiff ComputeFrameInventoryDiff(
    std::span<const SentencePair> pairs);

VerbCountComparison CompareVerbCounts(std::span<const SentencePair> pairs);

struct UntranslatedVerb {
  std::string verb;
  int64_t count = 0;

  bool operator==(const UntranslatedVerb &) const = default;
};

// Category-4 verbs ranked by count, ties by surface (byte order).
std::vector<UntranslatedVerb> UntranslatedVerbTable(
    std::span<const DivergenceRecord> records);

}  // namespace crossproj

#endif  // CROSSPROJ_DIVERGENCE_H_
