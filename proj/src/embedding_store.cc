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

#include "crossproj/embedding_store.h"

#include <bit>
#include <cstdint>
#include <cstring>

#include "crossproj/error.h"

namespace crossproj {

namespace {

static_assert(std::endian::native == std::endian::little,
              "CPEB I/O assumes a little-endian host");

constexpr char kMagic[4] = {'C', 'P', 'E', 'B'};
constexpr uint32_t kVersion = 1;

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Read(const char *what) {
    T value;
    Need(sizeof(T), what);
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string_view Take(size_t n, const char *what) {
    Need(n, what);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  size_t remaining() const { return bytes_.size() - pos_; }
  size_t offset() const { return pos_; }

 private:
  void Need(size_t n, const char *what) {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncatedFile,
                  std::string("file ends inside ") + what + " at byte " +
                      std::to_string(pos_));
    }
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

EmbeddingMatrix ReadMatrix(Reader &in, int dim, const std::string &id) {
  uint32_t n = in.Read<uint32_t>("word-piece count");
  EmbeddingMatrix m;
  m.dim = dim;
  // Checked before allocating so a corrupt count cannot request gigabytes.
  if (in.remaining() / sizeof(uint32_t) < n) {
    throw Error(ErrorCode::kTruncatedFile,
                "word-piece map of '" + id + "' runs past end of file");
  }
  m.wp_to_token.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t t = in.Read<uint32_t>("word-piece map");
    if (t > static_cast<uint32_t>(INT32_MAX)) {
      throw Error(ErrorCode::kTokenMapOutOfRange,
                  "token index " + std::to_string(t) + " in '" + id + "'");
    }
    m.wp_to_token[i] = static_cast<int>(t);
  }
  size_t floats = static_cast<size_t>(n) * static_cast<size_t>(dim);
  std::string_view raw = in.Take(floats * sizeof(float), "vectors");
  m.vectors.resize(n, dim);
  if (floats > 0) std::memcpy(m.vectors.data(), raw.data(), raw.size());
  return m;
}

void WriteMatrix(std::string &out, const EmbeddingMatrix &m) {
  auto put = [&](uint32_t v) {
    out.append(reinterpret_cast<const char *>(&v), sizeof(v));
  };
  put(static_cast<uint32_t>(m.rows()));
  for (int t : m.wp_to_token) put(static_cast<uint32_t>(t));
  out.append(reinterpret_cast<const char *>(m.vectors.data()),
             static_cast<size_t>(m.vectors.size()) * sizeof(float));
}

}  // namespace

bool EmbeddingMatrix::operator==(const EmbeddingMatrix &other) const {
  return dim == other.dim && wp_to_token == other.wp_to_token &&
         vectors.rows() == other.vectors.rows() &&
         vectors.cols() == other.vectors.cols() &&
         std::memcmp(vectors.data(), other.vectors.data(),
                     static_cast<size_t>(vectors.size()) * sizeof(float)) == 0;
}

void CheckEmbeddingMatrix(const EmbeddingMatrix &m) {
  if (m.vectors.rows() != m.rows() || m.vectors.cols() != m.dim) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix is " + std::to_string(m.vectors.rows()) + "x" +
                    std::to_string(m.vectors.cols()) + ", expected " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.dim));
  }
  int expected_next = 0;
  for (int i = 0; i < m.rows(); ++i) {
    int t = m.wp_to_token[i];
    bool ok = i == 0 ? t == 0 : (t == expected_next - 1 || t == expected_next);
    if (!ok) {
      throw Error(ErrorCode::kTokenMapOutOfRange,
                  "word-piece " + std::to_string(i) + " maps to token " +
                      std::to_string(t));
    }
    expected_next = t + 1;
    if ((m.vectors.row(i).array() == 0.0f).all()) {
      throw Error(ErrorCode::kZeroVector,
                  "word-piece " + std::to_string(i) + " is all zeros");
    }
  }
}

void CheckAgainstSentence(const EmbeddingMatrix &m, const Sentence &sentence) {
  if (m.num_tokens() != sentence.size()) {
    throw Error(ErrorCode::kTokenMapOutOfRange,
                "embeddings cover " + std::to_string(m.num_tokens()) +
                    " tokens, sentence has " +
                    std::to_string(sentence.size()));
  }
}

void EmbeddingStore::Add(EmbeddingPair pair) {
  for (const EmbeddingMatrix *m : {&pair.source, &pair.target}) {
    if (m->dim != dim_) {
      throw Error(ErrorCode::kDimMismatch,
                  "pair '" + pair.sentence_id + "' has dim " +
                      std::to_string(m->dim) + ", store has " +
                      std::to_string(dim_));
    }
    CheckEmbeddingMatrix(*m);
  }
  if (index_.count(pair.sentence_id) > 0) {
    throw Error(ErrorCode::kDuplicateId,
                "sentence id '" + pair.sentence_id + "' repeated");
  }
  index_.emplace(pair.sentence_id, pairs_.size());
  pairs_.push_back(std::move(pair));
}

const EmbeddingPair *EmbeddingStore::Find(std::string_view sentence_id) const {
  auto it = index_.find(std::string(sentence_id));
  return it == index_.end() ? nullptr : &pairs_[it->second];
}

EmbeddingStore LoadEmbeddings(std::string_view bytes,
                              std::optional<int> expected_dim) {
  Reader in(bytes);
  std::string_view magic = in.Take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not a CPEB file");
  }
  uint32_t version = in.Read<uint32_t>("version");
  if (version != kVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "version " + std::to_string(version));
  }
  uint32_t dim = in.Read<uint32_t>("dim");
  if (dim == 0 || dim > static_cast<uint32_t>(INT32_MAX)) {
    throw Error(ErrorCode::kDimMismatch, "dim " + std::to_string(dim));
  }
  if (expected_dim && static_cast<uint32_t>(*expected_dim) != dim) {
    throw Error(ErrorCode::kDimMismatch,
                "file has dim " + std::to_string(dim) + ", expected " +
                    std::to_string(*expected_dim));
  }
  uint32_t count = in.Read<uint32_t>("pair count");
  EmbeddingStore store(static_cast<int>(dim));
  for (uint32_t i = 0; i < count; ++i) {
    uint16_t id_len = in.Read<uint16_t>("id length");
    EmbeddingPair pair;
    pair.sentence_id = std::string(in.Take(id_len, "id"));
    pair.source = ReadMatrix(in, static_cast<int>(dim), pair.sentence_id);
    pair.target = ReadMatrix(in, static_cast<int>(dim), pair.sentence_id);
    store.Add(std::move(pair));
  }
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kTruncatedFile,
                std::to_string(in.remaining()) +
                    " trailing bytes after last pair");
  }
  return store;
}

std::string SerializeEmbeddings(const EmbeddingStore &store) {
  std::string out(kMagic, 4);
  auto put = [&](uint32_t v) {
    out.append(reinterpret_cast<const char *>(&v), sizeof(v));
  };
  put(kVersion);
  put(static_cast<uint32_t>(store.dim()));
  put(static_cast<uint32_t>(store.size()));
  for (const EmbeddingPair &pair : store.pairs()) {
    if (pair.sentence_id.size() > UINT16_MAX) {
      throw Error(ErrorCode::kInvalidArgument, "sentence id too long");
    }
    uint16_t len = static_cast<uint16_t>(pair.sentence_id.size());
    out.append(reinterpret_cast<const char *>(&len), sizeof(len));
    out += pair.sentence_id;
    WriteMatrix(out, pair.source);
    WriteMatrix(out, pair.target);
  }
  return out;
}

std::vector<std::span<const float>> TokenVectors(const EmbeddingMatrix &m,
                                                 int token) {
  std::vector<std::span<const float>> out;
  for (int i = 0; i < m.rows(); ++i) {
    if (m.wp_to_token[i] == token) {
      out.emplace_back(m.vectors.data() + static_cast<size_t>(i) * m.dim,
                       static_cast<size_t>(m.dim));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "no word-pieces for token " + std::to_string(token));
  }
  return out;
}

}  // namespace crossproj
