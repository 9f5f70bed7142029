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

#include "crossproj/aligner.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "crossproj/error.h"
#include "parallel.h"

namespace crossproj {

namespace {

void CheckDims(const EmbeddingMatrix &src, const EmbeddingMatrix &tgt) {
  if (src.dim != tgt.dim) {
    throw Error(ErrorCode::kDimMismatch,
                "source dim " + std::to_string(src.dim) + " vs target dim " +
                    std::to_string(tgt.dim));
  }
}

// What a source token may be aligned to in top-k mode.
enum class Carry { kNothing, kPredicate, kArgument };

std::vector<Carry> CarriedLabels(const Sentence &s) {
  std::vector<Carry> out(s.size(), Carry::kNothing);
  for (int t = 0; t < s.size(); ++t) {
    if (s.tokens[t].pos == Pos::kVerb) out[t] = Carry::kPredicate;
  }
  for (const Argument &a : s.arguments) {
    for (int t = a.start; t <= a.end; ++t) out[t] = Carry::kArgument;
  }
  for (const Predicate &p : s.predicates) out[p.token] = Carry::kPredicate;
  return out;
}

bool PassesFilter(Carry carry, Pos target_pos) {
  switch (carry) {
    case Carry::kPredicate:
      return target_pos == Pos::kVerb;
    case Carry::kArgument:
      return target_pos != Pos::kOther;
    case Carry::kNothing:
      return false;
  }
  return false;
}

void CheckMap(std::span<const int> map, int tokens, const char *side) {
  for (int t : map) {
    if (t < 0 || t >= tokens) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  std::string(side) + " word-piece maps to token " +
                      std::to_string(t));
    }
  }
}

}  // namespace

std::string_view AlignerModeName(AlignerMode mode) {
  return mode == AlignerMode::kTopkS2t ? "topk" : "ot";
}

void AlignerConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (k < 1) fail("k must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    fail("epsilon must be positive");
  }
  if (max_iters < 1) fail("max_iters must be positive");
  if (!(tol > 0.0) || !std::isfinite(tol)) fail("tol must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    fail("threshold must lie in (0, 1)");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    fail("temperature must be positive");
  }
}

SimilarityMatrix DotMatrix(const EmbeddingMatrix &src,
                           const EmbeddingMatrix &tgt) {
  CheckDims(src, tgt);
  return tgt.vectors.cast<double>() * src.vectors.cast<double>().transpose();
}

SimilarityMatrix CosineMatrix(const EmbeddingMatrix &src,
                              const EmbeddingMatrix &tgt) {
  CheckDims(src, tgt);
  auto unit_rows = [](const EmbeddingMatrix &m, const char *side) {
    Eigen::MatrixXd rows = m.vectors.cast<double>();
    for (int r = 0; r < rows.rows(); ++r) {
      double norm = rows.row(r).norm();
      if (norm == 0.0) {
        throw Error(ErrorCode::kZeroVector, std::string(side) +
                                                " word-piece " +
                                                std::to_string(r) +
                                                " is all zeros");
      }
      rows.row(r) /= norm;
    }
    return rows;
  };
  SimilarityMatrix sm =
      unit_rows(tgt, "target") * unit_rows(src, "source").transpose();
  return sm.cwiseMax(-1.0).cwiseMin(1.0);
}

AlignmentSet ExtractTopkS2t(const SimilarityMatrix &sm, const Sentence &src,
                            const Sentence &tgt,
                            std::span<const int> src_wp_to_token,
                            std::span<const int> tgt_wp_to_token,
                            const AlignerConfig &config) {
  const int p = static_cast<int>(src_wp_to_token.size());
  const int q = static_cast<int>(tgt_wp_to_token.size());
  if (sm.cols() != p || sm.rows() != q) {
    throw Error(ErrorCode::kShapeMismatch,
                "similarity matrix is " + std::to_string(sm.rows()) + "x" +
                    std::to_string(sm.cols()) + ", word-pieces give " +
                    std::to_string(q) + "x" + std::to_string(p));
  }
  CheckMap(src_wp_to_token, src.size(), "source");
  CheckMap(tgt_wp_to_token, tgt.size(), "target");
  std::vector<Carry> carry = CarriedLabels(src);

  AlignmentSet out;
  std::vector<int> order(q);
  for (int i = 0; i < p; ++i) {
    Carry c = carry[src_wp_to_token[i]];
    if (c == Carry::kNothing) continue;
    std::iota(order.begin(), order.end(), 0);
    int k = std::min(config.k, q);
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        if (sm(a, i) != sm(b, i)) return sm(a, i) > sm(b, i);
                        return a < b;
                      });
    for (int r = 0; r < k; ++r) {
      int j = order[r];
      if (PassesFilter(c, tgt.tokens[tgt_wp_to_token[j]].pos)) {
        out.links.push_back({i, j, sm(j, i)});
        break;
      }
    }
  }
  return out;
}

SimilarityMatrix NormalizeSimplex(const SimilarityMatrix &sm, Axis axis,
                                  double temperature) {
  SimilarityMatrix out(sm.rows(), sm.cols());
  if (axis == Axis::kRows) {
    for (int j = 0; j < sm.rows(); ++j) {
      Eigen::RowVectorXd z = sm.row(j) / temperature;
      Eigen::RowVectorXd e = (z.array() - z.maxCoeff()).exp().matrix();
      out.row(j) = e / e.sum();
    }
  } else {
    for (int i = 0; i < sm.cols(); ++i) {
      Eigen::VectorXd z = sm.col(i) / temperature;
      Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp().matrix();
      out.col(i) = e / e.sum();
    }
  }
  return out;
}

OtAlignment ExtractOtBidir(const EmbeddingMatrix &src,
                           const EmbeddingMatrix &tgt,
                           const AlignerConfig &config) {
  SimilarityMatrix s = DotMatrix(src, tgt);
  OtAlignment out;
  if (s.size() == 0) return out;
  SimilarityMatrix s_xy = NormalizeSimplex(s, Axis::kRows, config.temperature);
  SimilarityMatrix s_yx = NormalizeSimplex(s, Axis::kCols, config.temperature);
  const int q = static_cast<int>(s.rows());
  const int p = static_cast<int>(s.cols());
  Eigen::VectorXd mu = Eigen::VectorXd::Constant(p, 1.0 / p);
  Eigen::VectorXd nu = Eigen::VectorXd::Constant(q, 1.0 / q);
  SinkhornResult plan = SinkhornPlan(-s, mu, nu, config.sinkhorn());
  out.converged = plan.converged;
  out.iterations = plan.iterations;
  out.residual = plan.residual;

  // The plan reweights each direction; gating both keeps the output
  // symmetric under exchanging source and target.
  auto gate = [&](const SimilarityMatrix &probs) {
    Eigen::MatrixXd g = probs.cwiseProduct(plan.plan);
    double total = g.sum();
    if (total > 0.0) g /= total;
    return g;
  };
  Eigen::MatrixXd g_xy = gate(s_xy);
  Eigen::MatrixXd g_yx = gate(s_yx);
  const double t = config.threshold;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) {
      if (s_xy(j, i) > t && s_yx(j, i) > t && g_xy(j, i) > t &&
          g_yx(j, i) > t) {
        out.alignment.links.push_back({i, j, std::min(s_xy(j, i), s_yx(j, i))});
      }
    }
  }
  return out;
}

TokenAlignment ToTokenAlignment(const AlignmentSet &alignment,
                                std::span<const int> src_wp_to_token,
                                std::span<const int> tgt_wp_to_token) {
  std::map<std::pair<int, int>, double> best;
  for (const WordPieceLink &l : alignment.links) {
    if (l.source < 0 || l.source >= static_cast<int>(src_wp_to_token.size()) ||
        l.target < 0 || l.target >= static_cast<int>(tgt_wp_to_token.size())) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "word-piece link (" + std::to_string(l.source) + ", " +
                      std::to_string(l.target) + ") out of range");
    }
    std::pair<int, int> key{src_wp_to_token[l.source],
                            tgt_wp_to_token[l.target]};
    auto [it, inserted] = best.emplace(key, l.score);
    if (!inserted) it->second = std::max(it->second, l.score);
  }
  TokenAlignment out;
  out.reserve(best.size());
  for (const auto &[key, score] : best) {
    out.push_back({key.first, key.second, score});
  }
  return out;
}

TokenAlignment GoldTokenAlignment(const SentencePair &pair) {
  if (!pair.gold_alignment) {
    throw Error(ErrorCode::kInvalidArgument,
                "pair '" + pair.id + "' has no gold alignment");
  }
  std::vector<TokenPair> links = *pair.gold_alignment;
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  TokenAlignment out;
  out.reserve(links.size());
  for (const auto &[s, t] : links) out.push_back({s, t, 1.0});
  return out;
}

TokenAlignment Transposed(const TokenAlignment &alignment) {
  TokenAlignment out;
  out.reserve(alignment.size());
  for (const TokenLink &l : alignment) out.push_back({l.target, l.source, l.score});
  std::sort(out.begin(), out.end(), [](const TokenLink &a, const TokenLink &b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return out;
}

PairAlignment AlignPair(const SentencePair &pair,
                        const EmbeddingPair &embeddings,
                        const AlignerConfig &config) {
  CheckAgainstSentence(embeddings.source, pair.source);
  CheckAgainstSentence(embeddings.target, pair.target);
  const EmbeddingMatrix &src = embeddings.source;
  const EmbeddingMatrix &tgt = embeddings.target;
  PairAlignment out;
  if (config.mode == AlignerMode::kTopkS2t) {
    AlignmentSet a = ExtractTopkS2t(CosineMatrix(src, tgt), pair.source,
                                    pair.target, src.wp_to_token,
                                    tgt.wp_to_token, config);
    out.links = ToTokenAlignment(a, src.wp_to_token, tgt.wp_to_token);
  } else {
    OtAlignment a = ExtractOtBidir(src, tgt, config);
    out.links =
        ToTokenAlignment(a.alignment, src.wp_to_token, tgt.wp_to_token);
    out.converged = a.converged;
  }
  return out;
}

CorpusAlignment AlignCorpus(std::span<const SentencePair> pairs,
                            const EmbeddingStore *store,
                            const AlignerConfig &config,
                            AlignmentSource source, int workers) {
  config.Validate();
  auto align = [&](size_t n) -> PairAlignment {
    const SentencePair &pair = pairs[n];
    bool use_gold = source == AlignmentSource::kGold ||
                    (source == AlignmentSource::kGoldIfPresent &&
                     pair.gold_alignment.has_value());
    if (use_gold) return {GoldTokenAlignment(pair), true};
    const EmbeddingPair *emb =
        store != nullptr ? store->Find(pair.id) : nullptr;
    if (emb == nullptr) {
      throw Error(ErrorCode::kMissingEmbeddings,
                  "no embeddings for pair '" + pair.id + "'");
    }
    try {
      return AlignPair(pair, *emb, config);
    } catch (const Error &e) {
      throw Error(e.code(), "pair '" + pair.id + "': " + e.detail());
    }
  };
  std::vector<PairAlignment> results =
      internal::ParallelMap<PairAlignment>(pairs.size(), workers, align);
  CorpusAlignment out;
  out.links.reserve(results.size());
  for (PairAlignment &r : results) {
    if (!r.converged) ++out.nonconverged;
    out.links.push_back(std::move(r.links));
  }
  return out;
}

}  // namespace crossproj
