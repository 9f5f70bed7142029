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

#ifndef CROSSPROJ_PROJECTOR_H_
#define CROSSPROJ_PROJECTOR_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crossproj/aligner.h"
#include "crossproj/corpus.h"
#include "crossproj/embedding_store.h"

namespace crossproj {

enum class DropReason {
  // No link from the source token(s) at all.
  kNoAlignment,
  // Predicate linked only to non-verb target tokens.
  kNoVerbAlignment,
  // Another source predicate with a better link took the target verb.
  kTargetConflict,
  // Argument of a predicate that was not projected.
  kUnattached,
  // Projected span would contain its own predicate token.
  kOverlapsPredicate,
};

std::string_view DropReasonName(DropReason reason);
std::optional<DropReason> ParseDropReason(std::string_view name);

struct ProjectedPredicate {
  int token = 0;
  std::string frame;
  std::optional<std::string> sense;
  int source_predicate = 0;
  double score = 0.0;

  bool operator==(const ProjectedPredicate &) const = default;
};

struct ProjectedArgument {
  // Index into ProjectedAnnotation::predicates.
  int predicate = 0;
  std::string role;
  int start = 0;
  int end = 0;
  int source_argument = 0;
  // The aligned target tokens left gaps inside [start, end].
  bool discontiguous = false;

  bool operator==(const ProjectedArgument &) const = default;
};

struct DroppedItem {
  enum class Kind { kPredicate, kArgument };
  Kind kind = Kind::kPredicate;
  int source_index = 0;
  DropReason reason = DropReason::kNoAlignment;

  bool operator==(const DroppedItem &) const = default;
};

// Source annotations carried onto the target tokens of one pair. Every
// argument references a projected predicate.
struct ProjectedAnnotation {
  std::string pair_id;
  std::string lang;
  std::vector<Token> tokens;
  std::vector<ProjectedPredicate> predicates;
  std::vector<ProjectedArgument> arguments;
  std::vector<DroppedItem> dropped;

  // The projection as a plain annotated target sentence.
  Sentence AsSentence() const;

  bool operator==(const ProjectedAnnotation &) const = default;
};

ProjectedAnnotation ProjectPair(const SentencePair &pair,
                                const TokenAlignment &alignment);

// Projects every pair along alignments from `source`. Output order follows
// input order for any worker count.
struct ProjectionRun {
  std::vector<ProjectedAnnotation> annotations;
  std::vector<TokenAlignment> alignments;
  int nonconverged = 0;
};

ProjectionRun ProjectCorpus(std::span<const SentencePair> pairs,
                            const AlignerConfig &config,
                            const EmbeddingStore *store,
                            AlignmentSource source = AlignmentSource::kEmbeddings,
                            int workers = 1);

// JSON-lines projection records: the corpus record of the pair with the
// target annotations replaced by the projection, plus `dropped` and
// `discontiguous` arrays.
std::string SerializeProjections(std::span<const SentencePair> pairs,
                                 std::span<const ProjectedAnnotation> projected);

// Reads projection records back; annotations are validated like corpus
// records.
std::vector<ProjectedAnnotation> ParseProjections(
    std::string_view data,
    const FrameInventory &inventory = FrameInventory::Bundled());

}  // namespace crossproj

#endif  // CROSSPROJ_PROJECTOR_H_
