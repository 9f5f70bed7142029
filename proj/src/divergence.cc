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

#include "crossproj/divergence.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "crossproj/error.h"

namespace crossproj {

namespace {

constexpr std::array<std::string_view, 4> kCategoryNames = {
    "frame_convergence", "frame_divergence", "non_verbal", "misalignment"};
constexpr std::array<std::string_view, 6> kSubtypeNames = {
    "nominal", "phrase", "preposition", "adjective", "auxiliary", "adverb"};

std::optional<NonVerbalSubtype> SubtypeOf(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return NonVerbalSubtype::kNominal;
    case Pos::kAdp:
      return NonVerbalSubtype::kPreposition;
    case Pos::kAdj:
      return NonVerbalSubtype::kAdjective;
    case Pos::kAux:
    case Pos::kPart:
      return NonVerbalSubtype::kAuxiliary;
    case Pos::kAdv:
      return NonVerbalSubtype::kAdverb;
    case Pos::kVerb:
    case Pos::kOther:
      return std::nullopt;
  }
  return std::nullopt;
}

double Percent(int64_t count, int64_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) /
                                static_cast<double>(total);
}

std::vector<int64_t> Histogram(const std::vector<int> &values) {
  std::vector<int64_t> h;
  for (int v : values) {
    if (static_cast<size_t>(v) >= h.size()) h.resize(v + 1, 0);
    ++h[v];
  }
  return h;
}

}  // namespace

std::string_view CategoryName(Category category) {
  return kCategoryNames[static_cast<size_t>(category) - 1];
}

std::string_view SubtypeName(NonVerbalSubtype subtype) {
  return kSubtypeNames[static_cast<size_t>(subtype)];
}

DivergenceRecord ClassifyPredicate(const SentencePair &pair,
                                   int predicate_index,
                                   const TokenAlignment &alignment,
                                   const ClassifyOptions &options) {
  const Sentence &src = pair.source;
  const Sentence &tgt = pair.target;
  if (predicate_index < 0 ||
      predicate_index >= static_cast<int>(src.predicates.size())) {
    throw Error(ErrorCode::kPredicateNotInPair,
                "pair '" + pair.id + "' has no predicate " +
                    std::to_string(predicate_index));
  }
  const Predicate &pred = src.predicates[predicate_index];
  DivergenceRecord r;
  r.pair_id = pair.id;
  r.predicate = predicate_index;
  r.source_token = pred.token;
  r.verb = src.tokens[pred.token].surface;
  r.frame = pred.frame;

  // Best link first within each group; ties go to the lower target index.
  std::vector<TokenLink> verbs, others;
  for (const TokenLink &l : alignment) {
    if (l.source != pred.token) continue;
    if (l.target < 0 || l.target >= tgt.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "target token " + std::to_string(l.target) +
                      " outside pair '" + pair.id + "'");
    }
    if (tgt.PredicateAt(l.target) >= 0) {
      verbs.push_back(l);
    } else if (SubtypeOf(tgt.tokens[l.target].pos)) {
      others.push_back(l);
    }
  }
  auto by_score = [](const TokenLink &a, const TokenLink &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.target < b.target;
  };
  std::sort(verbs.begin(), verbs.end(), by_score);
  std::sort(others.begin(), others.end(), by_score);

  if (!verbs.empty()) {
    for (const TokenLink &l : verbs) {
      const Predicate &tp = tgt.predicates[tgt.PredicateAt(l.target)];
      if (tp.frame == pred.frame &&
          (options.frame_only || tp.sense == pred.sense)) {
        r.category = Category::kFrameConvergence;
        r.target_token = l.target;
        return r;
      }
    }
    r.category = Category::kFrameDivergence;
    r.target_token = verbs.front().target;
    return r;
  }
  if (!others.empty()) {
    r.category = Category::kNonVerbal;
    r.target_token = others.front().target;
    r.subtype = others.size() > 1
                    ? NonVerbalSubtype::kPhrase
                    : *SubtypeOf(tgt.tokens[others.front().target].pos);
    return r;
  }
  r.category = Category::kMisalignment;
  return r;
}

std::vector<DivergenceRecord> ClassifyPair(const SentencePair &pair,
                                           const TokenAlignment &alignment,
                                           const ClassifyOptions &options) {
  std::vector<DivergenceRecord> out;
  out.reserve(pair.source.predicates.size());
  for (size_t k = 0; k < pair.source.predicates.size(); ++k) {
    out.push_back(
        ClassifyPredicate(pair, static_cast<int>(k), alignment, options));
  }
  return out;
}

std::array<CategoryStat, 4> CategoryStats(std::array<int64_t, 4> counts) {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  std::array<CategoryStat, 4> out{};
  for (size_t i = 0; i < 4; ++i) out[i] = {counts[i], Percent(counts[i], total)};
  return out;
}

DistributionReport Distribution(std::span<const SentencePair> pairs,
                                std::span<const DivergenceRecord> records) {
  DistributionReport report;
  if (!pairs.empty()) {
    report.source_lang = pairs.front().source.lang;
    report.target_lang = pairs.front().target.lang;
  }
  std::unordered_map<std::string, const SentencePair *> by_id;
  for (const SentencePair &p : pairs) {
    by_id.emplace(p.id, &p);
    report.source_predicates += static_cast<int64_t>(p.source.predicates.size());
    report.target_predicates += static_cast<int64_t>(p.target.predicates.size());
  }
  std::set<std::pair<std::string, int>> seen;
  std::array<int64_t, 4> counts{};
  for (const DivergenceRecord &r : records) {
    auto it = by_id.find(r.pair_id);
    if (it == by_id.end() || r.predicate < 0 ||
        r.predicate >=
            static_cast<int>(it->second->source.predicates.size())) {
      throw Error(ErrorCode::kCoverageGap,
                  "record for unknown predicate " + r.pair_id + "#" +
                      std::to_string(r.predicate));
    }
    if (!seen.emplace(r.pair_id, r.predicate).second) {
      throw Error(ErrorCode::kCoverageGap,
                  "predicate " + r.pair_id + "#" +
                      std::to_string(r.predicate) + " classified twice");
    }
    ++counts[static_cast<size_t>(r.category) - 1];
    if (r.subtype) ++report.subtypes[*r.subtype];
  }
  for (const SentencePair &p : pairs) {
    for (size_t k = 0; k < p.source.predicates.size(); ++k) {
      if (seen.count({p.id, static_cast<int>(k)}) == 0) {
        throw Error(ErrorCode::kCoverageGap,
                    "predicate " + p.id + "#" + std::to_string(k) +
                        " has no record");
      }
    }
  }
  report.categories = CategoryStats(counts);
  report.verb_counts = CompareVerbCounts(pairs);
  report.frames = ComputeFrameInventoryDiff(pairs);
  return report;
}

FrameInventoryDiff ComputeFrameInventoryDiff(
    std::span<const SentencePair> pairs) {
  std::map<std::string, std::pair<int64_t, int64_t>> counts;
  int64_t source_total = 0, target_total = 0;
  for (const SentencePair &p : pairs) {
    for (const Predicate &pred : p.source.predicates) {
      ++counts[pred.frame].first;
      ++source_total;
    }
    for (const Predicate &pred : p.target.predicates) {
      ++counts[pred.frame].second;
      ++target_total;
    }
  }
  FrameInventoryDiff diff;
  for (const auto &[frame, c] : counts) {
    if (c.second == 0) {
      diff.only_source.push_back(frame);
    } else if (c.first == 0) {
      diff.only_target.push_back(frame);
    } else {
      diff.shared.push_back({frame, c.first, c.second,
                             Percent(c.first, source_total),
                             Percent(c.second, target_total)});
    }
  }
  std::stable_sort(diff.shared.begin(), diff.shared.end(),
                   [](const SharedFrame &a, const SharedFrame &b) {
                     return a.source_count + a.target_count >
                            b.source_count + b.target_count;
                   });
  return diff;
}

VerbCountComparison CompareVerbCounts(std::span<const SentencePair> pairs) {
  VerbCountComparison out;
  std::vector<int> source, target;
  for (const SentencePair &p : pairs) {
    int s = static_cast<int>(p.source.predicates.size());
    int t = static_cast<int>(p.target.predicates.size());
    source.push_back(s);
    target.push_back(t);
    if (s > t) {
      ++out.source_more;
    } else if (s == t) {
      ++out.equal;
    } else {
      ++out.source_fewer;
    }
  }
  out.source_histogram = Histogram(source);
  out.target_histogram = Histogram(target);
  return out;
}

std::vector<UntranslatedVerb> UntranslatedVerbTable(
    std::span<const DivergenceRecord> records) {
  std::map<std::string, int64_t> counts;
  for (const DivergenceRecord &r : records) {
    if (r.category == Category::kMisalignment) ++counts[r.verb];
  }
  std::vector<UntranslatedVerb> out;
  for (const auto &[verb, count] : counts) out.push_back({verb, count});
  std::stable_sort(out.begin(), out.end(),
                   [](const UntranslatedVerb &a, const UntranslatedVerb &b) {
                     return a.count > b.count;
                   });
  return out;
}

}  // namespace crossproj
