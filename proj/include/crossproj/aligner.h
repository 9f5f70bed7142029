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

// Word alignment from contextual embeddings.
//
// Similarity matrices are q x p: one row per target word-piece and one
// column per source word-piece. Two extraction strategies are provided:
//
//  * kTopkS2t: per source column, keep the k best target rows, drop the ones
//    whose target token cannot carry the source label, align the best
//    survivor. Only annotated source tokens and source verbs are aligned.
//  * kOtBidir: dot-product similarities are softmax-normalized in both
//    directions and gated by an entropic optimal transport plan; a cell is
//    aligned when all of them clear `threshold`.

#ifndef CROSSPROJ_ALIGNER_H_
#define CROSSPROJ_ALIGNER_H_

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "crossproj/corpus.h"
#include "crossproj/embedding_store.h"
#include "crossproj/sinkhorn.h"

namespace crossproj {

using SimilarityMatrix = Eigen::MatrixXd;

enum class AlignerMode { kTopkS2t, kOtBidir };

std::string_view AlignerModeName(AlignerMode mode);

struct AlignerConfig {
  AlignerMode mode = AlignerMode::kTopkS2t;
  int k = 2;
  double epsilon = 0.1;
  int max_iters = 1000;
  double tol = 1e-9;
  double threshold = 1e-3;
  double temperature = 1.0;

  // Throws kInvalidArgument when a field is out of its domain.
  void Validate() const;
  SinkhornOptions sinkhorn() const { return {epsilon, max_iters, tol, false}; }
};

struct WordPieceLink {
  int source = 0;
  int target = 0;
  double score = 0.0;

  bool operator==(const WordPieceLink &) const = default;
};

// Links sorted by (source, target), no duplicate cells.
struct AlignmentSet {
  std::vector<WordPieceLink> links;

  bool operator==(const AlignmentSet &) const = default;
};

struct TokenLink {
  int source = 0;
  int target = 0;
  double score = 0.0;

  bool operator==(const TokenLink &) const = default;
};

// Token links sorted by (source, target), unique.
using TokenAlignment = std::vector<TokenLink>;

SimilarityMatrix CosineMatrix(const EmbeddingMatrix &src,
                              const EmbeddingMatrix &tgt);
SimilarityMatrix DotMatrix(const EmbeddingMatrix &src,
                           const EmbeddingMatrix &tgt);

AlignmentSet ExtractTopkS2t(const SimilarityMatrix &sm, const Sentence &src,
                            const Sentence &tgt,
                            std::span<const int> src_wp_to_token,
                            std::span<const int> tgt_wp_to_token,
                            const AlignerConfig &config);

enum class Axis { kRows, kCols };

// Softmax of values / temperature within each row (kRows) or column (kCols).
SimilarityMatrix NormalizeSimplex(const SimilarityMatrix &sm, Axis axis,
                                  double temperature);

struct OtAlignment {
  AlignmentSet alignment;
  bool converged = true;
  int iterations = 0;
  double residual = 0.0;
};

OtAlignment ExtractOtBidir(const EmbeddingMatrix &src,
                           const EmbeddingMatrix &tgt,
                           const AlignerConfig &config);

// A token pair is linked when any of its word-piece pairs is; its score is
// the best word-piece score.
TokenAlignment ToTokenAlignment(const AlignmentSet &alignment,
                                std::span<const int> src_wp_to_token,
                                std::span<const int> tgt_wp_to_token);

// Gold links of the pair with score 1. Throws when the pair has none.
TokenAlignment GoldTokenAlignment(const SentencePair &pair);

// Same links with source and target exchanged, re-sorted.
TokenAlignment Transposed(const TokenAlignment &alignment);

struct PairAlignment {
  TokenAlignment links;
  bool converged = true;
};

// Aligns one pair from its embeddings with the configured strategy.
PairAlignment AlignPair(const SentencePair &pair,
                        const EmbeddingPair &embeddings,
                        const AlignerConfig &config);

// Where corpus-level token alignments come from.
enum class AlignmentSource {
  kEmbeddings,
  kGold,
  // Gold links when the pair has them, embeddings otherwise.
  kGoldIfPresent,
};

struct CorpusAlignment {
  std::vector<TokenAlignment> links;  // one per pair, input order
  int nonconverged = 0;
};

// Aligns every pair, fanning out over `workers` threads. Results do not
// depend on the worker count. `store` may be null for kGold. Embeddings
// are looked up by pair id; a missing id raises kMissingEmbeddings.
CorpusAlignment AlignCorpus(std::span<const SentencePair> pairs,
                            const EmbeddingStore *store,
                            const AlignerConfig &config,
                            AlignmentSource source, int workers);

}  // namespace crossproj

#endif  // CROSSPROJ_ALIGNER_H_
