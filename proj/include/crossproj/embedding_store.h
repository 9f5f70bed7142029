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

// Precomputed contextual word-piece embeddings in the CPEB format:
//
//   "CPEB"                     4 bytes magic
//   u32 version                = 1
//   u32 dim                    fixed for the whole file
//   u32 count                  number of sentence pairs
//   count times:
//     u16 id length, id bytes  UTF-8 sentence pair id
//     for source, then target:
//       u32 n                  word-piece count
//       n x u32                word-piece -> token index
//       n x dim x float32      row-major vectors
//
// All integers and floats are little-endian.

#ifndef CROSSPROJ_EMBEDDING_STORE_H_
#define CROSSPROJ_EMBEDDING_STORE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "crossproj/corpus.h"

namespace crossproj {

using RowMatrixXf =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One sentence's word-piece vectors, one row per word-piece.
struct EmbeddingMatrix {
  int dim = 0;
  RowMatrixXf vectors;
  std::vector<int> wp_to_token;

  int rows() const { return static_cast<int>(wp_to_token.size()); }
  // Number of tokens covered by the word-piece map.
  int num_tokens() const {
    return wp_to_token.empty() ? 0 : wp_to_token.back() + 1;
  }

  bool operator==(const EmbeddingMatrix &other) const;
};

struct EmbeddingPair {
  std::string sentence_id;
  EmbeddingMatrix source;
  EmbeddingMatrix target;

  EmbeddingPair Swapped() const { return {sentence_id, target, source}; }
  bool operator==(const EmbeddingPair &) const = default;
};

class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  size_t size() const { return pairs_.size(); }
  const std::vector<EmbeddingPair> &pairs() const { return pairs_; }

  // Validates the pair and appends it. Ids must be unique.
  void Add(EmbeddingPair pair);
  const EmbeddingPair *Find(std::string_view sentence_id) const;

  bool operator==(const EmbeddingStore &other) const {
    return dim_ == other.dim_ && pairs_ == other.pairs_;
  }

 private:
  int dim_ = 0;
  std::vector<EmbeddingPair> pairs_;
  std::unordered_map<std::string, size_t> index_;
};

// Checks the matrix invariants: the map is non-decreasing, starts at token 0
// and covers every token index up to its maximum, and no row is all-zero.
void CheckEmbeddingMatrix(const EmbeddingMatrix &m);

// Checks that `m` covers exactly the tokens of `sentence`.
void CheckAgainstSentence(const EmbeddingMatrix &m, const Sentence &sentence);

EmbeddingStore LoadEmbeddings(std::string_view bytes,
                              std::optional<int> expected_dim = std::nullopt);
std::string SerializeEmbeddings(const EmbeddingStore &store);

// Rows of `m` belonging to `token`, in order. Never empty for a valid
// matrix and token.
std::vector<std::span<const float>> TokenVectors(const EmbeddingMatrix &m,
                                                 int token);

}  // namespace crossproj

#endif  // CROSSPROJ_EMBEDDING_STORE_H_
