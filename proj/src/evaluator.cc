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

#include "crossproj/evaluator.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "crossproj/error.h"

namespace crossproj {

namespace {

// (predicate position, role, start, end)
using ArgKey = std::tuple<int, std::string, int, int>;

// Tallies one label from two multisets.
template <typename Key>
void Tally(const std::map<Key, int64_t> &projected,
           const std::map<Key, int64_t> &gold, EvalCounts &counts) {
  for (const auto &[key, n] : projected) {
    auto it = gold.find(key);
    int64_t matched = it == gold.end() ? 0 : std::min(n, it->second);
    counts.correct += matched;
    counts.false_pos += n - matched;
  }
  for (const auto &[key, n] : gold) {
    auto it = projected.find(key);
    int64_t matched = it == projected.end() ? 0 : std::min(n, it->second);
    counts.false_neg += n - matched;
  }
}

int64_t Pow10(int digits) {
  int64_t p = 1;
  for (int i = 0; i < digits; ++i) p *= 10;
  return p;
}

void CheckSameSentence(const ProjectedAnnotation &projected,
                       const Sentence &gold) {
  bool same = projected.tokens.size() == gold.tokens.size();
  for (size_t i = 0; same && i < gold.tokens.size(); ++i) {
    same = projected.tokens[i].surface == gold.tokens[i].surface;
  }
  if (!same) {
    throw Error(ErrorCode::kSentenceMismatch,
                "projection '" + projected.pair_id +
                    "' does not cover the gold sentence tokens");
  }
}

}  // namespace

EvalCounts &EvalCounts::operator+=(const EvalCounts &other) {
  correct += other.correct;
  false_pos += other.false_pos;
  false_neg += other.false_neg;
  return *this;
}

double RoundRatioHalfUp(int64_t num, int64_t den, int digits) {
  if (den <= 0 || num < 0) {
    throw Error(ErrorCode::kInvalidArgument, "ratio needs num >= 0, den > 0");
  }
  const int64_t scale = Pow10(digits);
  // floor(num * scale / den + 1/2) in integers.
  __int128 scaled = static_cast<__int128>(num) * scale * 2 + den;
  int64_t units = static_cast<int64_t>(scaled / (static_cast<__int128>(den) * 2));
  return static_cast<double>(units) / static_cast<double>(scale);
}

Prf ComputePrf(const EvalCounts &c) {
  Prf out;
  auto ratio = [](int64_t num, int64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  out.precision = ratio(100 * c.correct, c.correct + c.false_pos);
  out.recall = ratio(100 * c.correct, c.correct + c.false_neg);
  out.f1 = ratio(200 * c.correct, 2 * c.correct + c.false_pos + c.false_neg);
  return out;
}

Prf RoundedPrf(const EvalCounts &c) {
  auto rounded = [](int64_t num, int64_t den) {
    return den == 0 ? 0.0 : RoundRatioHalfUp(num, den, 2);
  };
  return {rounded(100 * c.correct, c.correct + c.false_pos),
          rounded(100 * c.correct, c.correct + c.false_neg),
          rounded(200 * c.correct, 2 * c.correct + c.false_pos + c.false_neg)};
}

std::vector<EvalCounts> ScorePair(const ProjectedAnnotation &projected,
                                  const Sentence &gold,
                                  const ScoreOptions &options) {
  CheckSameSentence(projected, gold);

  using PredKey = std::pair<int, std::string>;
  auto pred_key = [&](int token, const std::string &frame) {
    return PredKey{token, options.position_only ? std::string() : frame};
  };
  std::map<PredKey, int64_t> proj_preds, gold_preds;
  for (const ProjectedPredicate &p : projected.predicates) {
    ++proj_preds[pred_key(p.token, p.frame)];
  }
  for (const Predicate &p : gold.predicates) {
    ++gold_preds[pred_key(p.token, p.frame)];
  }

  std::map<std::string, std::map<ArgKey, int64_t>> proj_args, gold_args;
  for (const ProjectedArgument &a : projected.arguments) {
    int anchor = projected.predicates.at(a.predicate).token;
    ++proj_args[a.role][{anchor, a.role, a.start, a.end}];
  }
  for (const Argument &a : gold.arguments) {
    int anchor = gold.predicates.at(a.predicate).token;
    ++gold_args[a.role][{anchor, a.role, a.start, a.end}];
  }

  std::vector<EvalCounts> out;
  out.push_back({std::string(kPredicatesLabel), 0, 0, 0});
  Tally(proj_preds, gold_preds, out.back());

  std::set<std::string> roles;
  for (const auto &[role, unused] : proj_args) roles.insert(role);
  for (const auto &[role, unused] : gold_args) roles.insert(role);
  static const std::map<ArgKey, int64_t> kEmpty;
  for (const std::string &role : roles) {
    EvalCounts counts{role, 0, 0, 0};
    auto p = proj_args.find(role);
    auto g = gold_args.find(role);
    Tally(p == proj_args.end() ? kEmpty : p->second,
          g == gold_args.end() ? kEmpty : g->second, counts);
    out.push_back(std::move(counts));
  }
  return out;
}

EvalCounts Aggregate(std::span<const EvalCounts> counts) {
  EvalCounts total{std::string(kOverallLabel), 0, 0, 0};
  for (const EvalCounts &c : counts) total += c;
  return total;
}

std::vector<EvalCounts> MergeByLabel(
    std::span<const std::vector<EvalCounts>> per_pair,
    std::span<const std::string> roles) {
  std::map<std::string, EvalCounts> merged;
  for (const auto &pair_counts : per_pair) {
    for (const EvalCounts &c : pair_counts) {
      auto [it, inserted] = merged.try_emplace(c.label, EvalCounts{c.label});
      it->second += c;
    }
  }
  std::vector<EvalCounts> out;
  std::set<std::string> emitted;
  auto take = [&](const std::string &label) {
    if (!emitted.insert(label).second) return;
    auto it = merged.find(label);
    if (it == merged.end()) {
      out.push_back({label, 0, 0, 0});
    } else {
      out.push_back(it->second);
      merged.erase(it);
    }
  };
  take(std::string(kPredicatesLabel));
  for (const std::string &role : roles) take(role);
  for (auto &[label, c] : merged) out.push_back(c);
  return out;
}

std::vector<FrameDiffRecord> DiffProjectedFrames(
    const ProjectedAnnotation &projected, const Sentence &gold,
    const CategoryLookup &categories) {
  CheckSameSentence(projected, gold);
  std::map<int, const ProjectedPredicate *> proj;
  std::map<int, const Predicate *> ref;
  for (const ProjectedPredicate &p : projected.predicates) proj[p.token] = &p;
  for (const Predicate &p : gold.predicates) ref[p.token] = &p;
  std::set<int> positions;
  for (const auto &[t, unused] : proj) positions.insert(t);
  for (const auto &[t, unused] : ref) positions.insert(t);

  std::vector<FrameDiffRecord> out;
  for (int t : positions) {
    FrameDiffRecord r;
    r.token = t;
    r.verb = gold.tokens[t].surface;
    auto p = proj.find(t);
    auto g = ref.find(t);
    if (p != proj.end()) r.projected_frame = p->second->frame;
    if (g != ref.end()) r.gold_frame = g->second->frame;
    if (r.projected_frame == r.gold_frame) continue;

    const DivergenceRecord *found = nullptr;
    if (p != proj.end()) {
      for (const DivergenceRecord &d : categories.forward) {
        if (d.pair_id == projected.pair_id &&
            d.predicate == p->second->source_predicate) {
          found = &d;
          break;
        }
      }
    } else {
      for (const DivergenceRecord &d : categories.reverse) {
        if (d.pair_id == projected.pair_id && d.source_token == t) {
          found = &d;
          break;
        }
      }
    }
    if (found == nullptr) {
      throw Error(ErrorCode::kCoverageGap,
                  "no divergence record for " + projected.pair_id +
                      " token " + std::to_string(t));
    }
    r.category = found->category;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace crossproj
