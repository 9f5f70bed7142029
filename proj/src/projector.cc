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

#include "crossproj/projector.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "corpus_json.h"
#include "crossproj/error.h"
#include "parallel.h"

namespace crossproj {

namespace {

constexpr std::array<std::string_view, 5> kDropNames = {
    "no_alignment", "no_verb_alignment", "target_conflict", "unattached",
    "overlaps_predicate"};

struct Candidate {
  int source_predicate;
  int target;
  double score;
};

// Better link first: higher score, then lower index.
bool Better(double score_a, int index_a, double score_b, int index_b) {
  if (score_a != score_b) return score_a > score_b;
  return index_a < index_b;
}

}  // namespace

std::string_view DropReasonName(DropReason reason) {
  return kDropNames[static_cast<size_t>(reason)];
}

std::optional<DropReason> ParseDropReason(std::string_view name) {
  for (size_t i = 0; i < kDropNames.size(); ++i) {
    if (kDropNames[i] == name) return static_cast<DropReason>(i);
  }
  return std::nullopt;
}

Sentence ProjectedAnnotation::AsSentence() const {
  Sentence s{lang, tokens, {}, {}};
  for (const ProjectedPredicate &p : predicates) {
    s.predicates.push_back({p.token, p.frame, p.sense});
  }
  for (const ProjectedArgument &a : arguments) {
    s.arguments.push_back({a.predicate, a.role, a.start, a.end});
  }
  return s;
}

ProjectedAnnotation ProjectPair(const SentencePair &pair,
                                const TokenAlignment &alignment) {
  const Sentence &src = pair.source;
  const Sentence &tgt = pair.target;
  std::vector<std::vector<TokenLink>> by_source(src.size());
  for (const TokenLink &l : alignment) {
    if (l.source < 0 || l.source >= src.size() || l.target < 0 ||
        l.target >= tgt.size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "token link (" + std::to_string(l.source) + ", " +
                      std::to_string(l.target) + ") outside pair '" +
                      pair.id + "'");
    }
    by_source[l.source].push_back(l);
  }

  ProjectedAnnotation out;
  out.pair_id = pair.id;
  out.lang = tgt.lang;
  out.tokens = tgt.tokens;

  // Best target verb for every source predicate.
  std::vector<std::optional<Candidate>> chosen(src.predicates.size());
  std::vector<std::optional<DropReason>> predicate_drop(src.predicates.size());
  for (size_t k = 0; k < src.predicates.size(); ++k) {
    const auto &links = by_source[src.predicates[k].token];
    if (links.empty()) {
      predicate_drop[k] = DropReason::kNoAlignment;
      continue;
    }
    for (const TokenLink &l : links) {
      if (tgt.tokens[l.target].pos != Pos::kVerb) continue;
      if (!chosen[k] ||
          Better(l.score, l.target, chosen[k]->score, chosen[k]->target)) {
        chosen[k] = Candidate{static_cast<int>(k), l.target, l.score};
      }
    }
    if (!chosen[k]) predicate_drop[k] = DropReason::kNoVerbAlignment;
  }

  // One predicate per target token: the best link keeps it.
  std::map<int, int> owner;  // target token -> source predicate
  for (size_t k = 0; k < chosen.size(); ++k) {
    if (!chosen[k]) continue;
    auto [it, inserted] = owner.emplace(chosen[k]->target, static_cast<int>(k));
    if (inserted) continue;
    const Candidate &held = *chosen[it->second];
    if (Better(chosen[k]->score, static_cast<int>(k), held.score,
               held.source_predicate)) {
      predicate_drop[it->second] = DropReason::kTargetConflict;
      it->second = static_cast<int>(k);
    } else {
      predicate_drop[k] = DropReason::kTargetConflict;
    }
  }

  std::vector<int> projected_index(src.predicates.size(), -1);
  for (size_t k = 0; k < src.predicates.size(); ++k) {
    if (predicate_drop[k]) {
      out.dropped.push_back({DroppedItem::Kind::kPredicate,
                             static_cast<int>(k), *predicate_drop[k]});
      continue;
    }
    const Predicate &p = src.predicates[k];
    projected_index[k] = static_cast<int>(out.predicates.size());
    out.predicates.push_back({chosen[k]->target, p.frame, p.sense,
                              static_cast<int>(k), chosen[k]->score});
  }

  for (size_t j = 0; j < src.arguments.size(); ++j) {
    const Argument &a = src.arguments[j];
    auto drop = [&](DropReason reason) {
      out.dropped.push_back(
          {DroppedItem::Kind::kArgument, static_cast<int>(j), reason});
    };
    int head = projected_index[a.predicate];
    if (head < 0) {
      drop(DropReason::kUnattached);
      continue;
    }
    int anchor = out.predicates[head].token;
    std::set<int> covered;
    for (int t = a.start; t <= a.end; ++t) {
      for (const TokenLink &l : by_source[t]) {
        if (l.target != anchor) covered.insert(l.target);
      }
    }
    if (covered.empty()) {
      drop(DropReason::kNoAlignment);
      continue;
    }
    int start = *covered.begin();
    int end = *covered.rbegin();
    if (start < anchor && anchor < end) {
      drop(DropReason::kOverlapsPredicate);
      continue;
    }
    bool gaps = static_cast<int>(covered.size()) != end - start + 1;
    out.arguments.push_back({head, a.role, start, end, static_cast<int>(j),
                             gaps});
  }
  return out;
}

ProjectionRun ProjectCorpus(std::span<const SentencePair> pairs,
                            const AlignerConfig &config,
                            const EmbeddingStore *store,
                            AlignmentSource source, int workers) {
  CorpusAlignment aligned =
      AlignCorpus(pairs, store, config, source, workers);
  ProjectionRun run;
  run.annotations = internal::ParallelMap<ProjectedAnnotation>(
      pairs.size(), workers,
      [&](size_t i) { return ProjectPair(pairs[i], aligned.links[i]); });
  run.alignments = std::move(aligned.links);
  run.nonconverged = aligned.nonconverged;
  return run;
}

std::string SerializeProjections(
    std::span<const SentencePair> pairs,
    std::span<const ProjectedAnnotation> projected) {
  if (pairs.size() != projected.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "projection count differs from pair count");
  }
  using internal::Json;
  std::string out;
  for (size_t n = 0; n < pairs.size(); ++n) {
    const ProjectedAnnotation &p = projected[n];
    if (p.pair_id != pairs[n].id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "projection '" + p.pair_id + "' out of order");
    }
    SentencePair record = pairs[n];
    record.target = p.AsSentence();
    Json j = internal::PairToJson(record);
    Json dropped = Json::array();
    for (const DroppedItem &d : p.dropped) {
      dropped.push_back(
          {{"index", d.source_index},
           {"kind", d.kind == DroppedItem::Kind::kPredicate ? "predicate"
                                                            : "argument"},
           {"reason", DropReasonName(d.reason)}});
    }
    Json discontiguous = Json::array();
    Json arg_sources = Json::array();
    for (size_t a = 0; a < p.arguments.size(); ++a) {
      if (p.arguments[a].discontiguous) discontiguous.push_back(a);
      arg_sources.push_back(p.arguments[a].source_argument);
    }
    Json pred_sources = Json::array();
    for (const ProjectedPredicate &pp : p.predicates) {
      pred_sources.push_back(
          {{"score", pp.score}, {"source", pp.source_predicate}});
    }
    j["dropped"] = std::move(dropped);
    j["discontiguous"] = std::move(discontiguous);
    j["provenance"] = {{"arguments", std::move(arg_sources)},
                       {"predicates", std::move(pred_sources)}};
    out += internal::DumpCanonical(j);
    out += '\n';
  }
  return out;
}

std::vector<ProjectedAnnotation> ParseProjections(
    std::string_view data, const FrameInventory &inventory) {
  using internal::Json;
  std::vector<ProjectedAnnotation> out;
  internal::ForEachJsonLine(data, [&](const Json &v, int line) {
    SentencePair pair = internal::PairFromJson(
        v, line, inventory, {"dropped", "discontiguous", "provenance"});
    ProjectedAnnotation p;
    p.pair_id = pair.id;
    p.lang = pair.target.lang;
    p.tokens = pair.target.tokens;
    const int n_src_preds = static_cast<int>(pair.source.predicates.size());
    const int n_src_args = static_cast<int>(pair.source.arguments.size());

    std::vector<int> pred_source(pair.target.predicates.size());
    std::vector<double> pred_score(pair.target.predicates.size(), 0.0);
    std::vector<int> arg_source(pair.target.arguments.size());
    for (size_t k = 0; k < pred_source.size(); ++k) pred_source[k] = k;
    for (size_t k = 0; k < arg_source.size(); ++k) arg_source[k] = k;
    auto prov = v.find("provenance");
    if (prov != v.end()) {
      const Json &preds = internal::Field(*prov, "predicates", line);
      const Json &args = internal::Field(*prov, "arguments", line);
      if (!preds.is_array() || preds.size() != pred_source.size() ||
          !args.is_array() || args.size() != arg_source.size()) {
        throw Error(ErrorCode::kMalformedJson,
                    "provenance does not match the annotations", line);
      }
      for (size_t k = 0; k < preds.size(); ++k) {
        pred_source[k] = internal::IntField(preds[k], "source", line);
        const Json &score = internal::Field(preds[k], "score", line);
        if (!score.is_number()) {
          throw Error(ErrorCode::kMalformedJson, "score is not a number",
                      line);
        }
        pred_score[k] = score.get<double>();
      }
      for (size_t k = 0; k < args.size(); ++k) {
        arg_source[k] = internal::AsInt(args[k], line, "argument source");
      }
    }
    for (size_t k = 0; k < pred_source.size(); ++k) {
      if (pred_source[k] < 0 || pred_source[k] >= n_src_preds) {
        throw Error(ErrorCode::kInvalidRecord,
                    "projected predicate names missing source predicate",
                    line);
      }
      const Predicate &tp = pair.target.predicates[k];
      p.predicates.push_back(
          {tp.token, tp.frame, tp.sense, pred_source[k], pred_score[k]});
    }
    for (size_t k = 0; k < arg_source.size(); ++k) {
      if (arg_source[k] < 0 || arg_source[k] >= n_src_args) {
        throw Error(ErrorCode::kInvalidRecord,
                    "projected argument names missing source argument", line);
      }
      const Argument &ta = pair.target.arguments[k];
      p.arguments.push_back(
          {ta.predicate, ta.role, ta.start, ta.end, arg_source[k], false});
    }
    auto disc = v.find("discontiguous");
    if (disc != v.end()) {
      if (!disc->is_array()) {
        throw Error(ErrorCode::kMalformedJson,
                    "'discontiguous' is not an array", line);
      }
      for (const Json &a : *disc) {
        int idx = internal::AsInt(a, line, "discontiguous");
        if (idx < 0 || idx >= static_cast<int>(p.arguments.size())) {
          throw Error(ErrorCode::kInvalidRecord,
                      "discontiguous names missing argument", line);
        }
        p.arguments[idx].discontiguous = true;
      }
    }
    auto dropped = v.find("dropped");
    if (dropped != v.end()) {
      if (!dropped->is_array()) {
        throw Error(ErrorCode::kMalformedJson, "'dropped' is not an array",
                    line);
      }
      for (const Json &d : *dropped) {
        std::string kind = internal::StringField(d, "kind", line);
        std::string reason_name = internal::StringField(d, "reason", line);
        std::optional<DropReason> reason = ParseDropReason(reason_name);
        if (!reason || (kind != "predicate" && kind != "argument")) {
          throw Error(ErrorCode::kInvalidRecord,
                      "bad dropped entry '" + kind + "/" + reason_name + "'",
                      line);
        }
        bool is_pred = kind == "predicate";
        int index = internal::IntField(d, "index", line);
        if (index < 0 || index >= (is_pred ? n_src_preds : n_src_args)) {
          throw Error(ErrorCode::kInvalidRecord,
                      "dropped entry names missing source item", line);
        }
        p.dropped.push_back({is_pred ? DroppedItem::Kind::kPredicate
                                     : DroppedItem::Kind::kArgument,
                             index, *reason});
      }
    }
    out.push_back(std::move(p));
  });
  return out;
}

}  // namespace crossproj
