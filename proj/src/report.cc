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

#include "crossproj/report.h"

#include <cstdio>
#include <map>

#include "json.hpp"

namespace crossproj {

namespace {

using Json = nlohmann::ordered_json;

std::string Fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string Dump(const Json &j) { return j.dump(2) + "\n"; }

Json DirectionJson(const Direction &d) {
  return {{"source", d.source_lang}, {"target", d.target_lang}};
}

std::vector<EvalCounts> WithOverall(std::span<const EvalCounts> rows) {
  std::vector<EvalCounts> out(rows.begin(), rows.end());
  out.push_back(Aggregate(rows));
  return out;
}

std::string OrDash(const std::optional<std::string> &s) {
  return s ? *s : "-";
}

double Percent(int64_t count, int64_t total) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) /
                                static_cast<double>(total);
}

Json RecordJson(const DivergenceRecord &r) {
  Json j = {{"pair_id", r.pair_id},
            {"predicate", r.predicate},
            {"source_token", r.source_token},
            {"verb", r.verb},
            {"frame", r.frame},
            {"category", static_cast<int>(r.category)},
            {"category_name", CategoryName(r.category)}};
  j["target_token"] = r.target_token ? Json(*r.target_token) : Json(nullptr);
  j["subtype"] = r.subtype ? Json(SubtypeName(*r.subtype)) : Json(nullptr);
  return j;
}

}  // namespace

std::string EvaluationTsv(std::span<const EvalCounts> rows) {
  std::string out = "label\tC\tFP\tFN\tP\tR\tF1\n";
  for (const EvalCounts &c : WithOverall(rows)) {
    Prf prf = RoundedPrf(c);
    out += c.label + "\t" + std::to_string(c.correct) + "\t" +
           std::to_string(c.false_pos) + "\t" + std::to_string(c.false_neg) +
           "\t" + Fixed(prf.precision, 2) + "\t" + Fixed(prf.recall, 2) +
           "\t" + Fixed(prf.f1, 2) + "\n";
  }
  return out;
}

std::string EvaluationJson(const Direction &direction,
                           std::span<const EvalCounts> rows) {
  Json table = Json::array();
  for (const EvalCounts &c : WithOverall(rows)) {
    Prf prf = RoundedPrf(c);
    table.push_back({{"label", c.label},
                     {"C", c.correct},
                     {"FP", c.false_pos},
                     {"FN", c.false_neg},
                     {"P", prf.precision},
                     {"R", prf.recall},
                     {"F1", prf.f1}});
  }
  return Dump({{"direction", DirectionJson(direction)},
               {"rows", std::move(table)}});
}

std::string FrameDiffTsv(std::span<const PairFrameDiff> diffs) {
  std::string out =
      "pair_id\ttoken\tverb\tprojected_frame\tgold_frame\tcategory\n";
  for (const PairFrameDiff &d : diffs) {
    for (const FrameDiffRecord &r : d.records) {
      out += d.pair_id + "\t" + std::to_string(r.token) + "\t" + r.verb +
             "\t" + OrDash(r.projected_frame) + "\t" + OrDash(r.gold_frame) +
             "\t" + std::to_string(static_cast<int>(r.category)) + "\n";
    }
  }
  return out;
}

std::string FrameDiffJson(const Direction &direction,
                          std::span<const PairFrameDiff> diffs) {
  Json records = Json::array();
  for (const PairFrameDiff &d : diffs) {
    for (const FrameDiffRecord &r : d.records) {
      records.push_back(
          {{"pair_id", d.pair_id},
           {"token", r.token},
           {"verb", r.verb},
           {"projected_frame",
            r.projected_frame ? Json(*r.projected_frame) : Json(nullptr)},
           {"gold_frame", r.gold_frame ? Json(*r.gold_frame) : Json(nullptr)},
           {"category", static_cast<int>(r.category)}});
    }
  }
  return Dump({{"direction", DirectionJson(direction)},
               {"records", std::move(records)}});
}

std::string DropSummaryTsv(std::span<const ProjectedAnnotation> projected) {
  std::map<std::pair<int, int>, int64_t> counts;
  for (const ProjectedAnnotation &p : projected) {
    for (const DroppedItem &d : p.dropped) {
      ++counts[{static_cast<int>(d.kind), static_cast<int>(d.reason)}];
    }
  }
  std::string out = "kind\treason\tcount\n";
  for (const auto &[key, n] : counts) {
    out += std::string(key.first == 0 ? "predicate" : "argument") + "\t" +
           std::string(DropReasonName(static_cast<DropReason>(key.second))) +
           "\t" + std::to_string(n) + "\n";
  }
  return out;
}

std::string DivergenceRecordsTsv(std::span<const DivergenceRecord> records) {
  std::string out =
      "pair_id\tpredicate\tsource_token\tverb\tframe\tcategory\ttarget_token"
      "\tsubtype\n";
  for (const DivergenceRecord &r : records) {
    out += r.pair_id + "\t" + std::to_string(r.predicate) + "\t" +
           std::to_string(r.source_token) + "\t" + r.verb + "\t" + r.frame +
           "\t" + std::to_string(static_cast<int>(r.category)) + "\t" +
           (r.target_token ? std::to_string(*r.target_token) : "-") + "\t" +
           (r.subtype ? std::string(SubtypeName(*r.subtype)) : "-") + "\n";
  }
  return out;
}

std::string DivergenceJson(const DistributionReport &report,
                           std::span<const DivergenceRecord> records) {
  Json categories = Json::array();
  for (size_t i = 0; i < report.categories.size(); ++i) {
    Category c = static_cast<Category>(i + 1);
    categories.push_back({{"category", static_cast<int>(c)},
                          {"name", CategoryName(c)},
                          {"count", report.categories[i].count},
                          {"percent", report.categories[i].percent}});
  }
  Json subtypes = Json::object();
  int64_t nominal = 0, non_nominal = 0;
  for (const auto &[subtype, n] : report.subtypes) {
    subtypes[std::string(SubtypeName(subtype))] = n;
    (subtype == NonVerbalSubtype::kNominal ? nominal : non_nominal) += n;
  }
  Json list = Json::array();
  for (const DivergenceRecord &r : records) list.push_back(RecordJson(r));
  return Dump({{"direction", DirectionJson({report.source_lang,
                                            report.target_lang})},
               {"source_predicates", report.source_predicates},
               {"target_predicates", report.target_predicates},
               {"categories", std::move(categories)},
               {"non_verbal",
                {{"nominal", nominal}, {"non_nominal", non_nominal}}},
               {"subtypes", std::move(subtypes)},
               {"records", std::move(list)}});
}

std::string CategoriesTsv(const DistributionReport &report) {
  std::string out = "category\tname\tcount\tpercent\n";
  for (size_t i = 0; i < report.categories.size(); ++i) {
    Category c = static_cast<Category>(i + 1);
    out += std::to_string(i + 1) + "\t" + std::string(CategoryName(c)) +
           "\t" + std::to_string(report.categories[i].count) + "\t" +
           Fixed(report.categories[i].percent, 1) + "\n";
  }
  out += "total\t-\t" + std::to_string(report.source_predicates) + "\t" +
         Fixed(report.source_predicates == 0 ? 0.0 : 100.0, 1) + "\n";
  return out;
}

std::string SubtypesCsv(const DistributionReport &report) {
  std::string out = "subtype,count\n";
  for (int s = 0; s <= static_cast<int>(NonVerbalSubtype::kAdverb); ++s) {
    auto subtype = static_cast<NonVerbalSubtype>(s);
    auto it = report.subtypes.find(subtype);
    out += std::string(SubtypeName(subtype)) + "," +
           std::to_string(it == report.subtypes.end() ? 0 : it->second) + "\n";
  }
  return out;
}

std::string UntranslatedTsv(std::span<const UntranslatedVerb> verbs) {
  std::string out = "verb\tcount\n";
  for (const UntranslatedVerb &v : verbs) {
    out += v.verb + "\t" + std::to_string(v.count) + "\n";
  }
  return out;
}

std::string VerbCountsTsv(const Direction &direction,
                          const VerbCountComparison &counts) {
  int64_t total = counts.source_more + counts.equal + counts.source_fewer;
  const std::string &s = direction.source_lang;
  const std::string &t = direction.target_lang;
  std::string out = "comparison\tpairs\tpercent\n";
  auto row = [&](const std::string &label, int64_t n) {
    out += label + "\t" + std::to_string(n) + "\t" +
           Fixed(Percent(n, total), 1) + "\n";
  };
  row(s + ">" + t, counts.source_more);
  row(s + "=" + t, counts.equal);
  row(s + "<" + t, counts.source_fewer);
  return out;
}

std::string HistogramCsv(const Direction &direction,
                         const VerbCountComparison &counts) {
  size_t bins = std::max(counts.source_histogram.size(),
                         counts.target_histogram.size());
  auto at = [](const std::vector<int64_t> &h, size_t i) {
    return i < h.size() ? h[i] : 0;
  };
  std::string out = "predicates," + direction.source_lang + "," +
                    direction.target_lang + "\n";
  for (size_t i = 0; i < bins; ++i) {
    out += std::to_string(i) + "," +
           std::to_string(at(counts.source_histogram, i)) + "," +
           std::to_string(at(counts.target_histogram, i)) + "\n";
  }
  return out;
}

std::string FramesTsv(const Direction &direction,
                      const FrameInventoryDiff &frames) {
  const std::string &s = direction.source_lang;
  const std::string &t = direction.target_lang;
  std::string out = "scope\tframe\t" + s + "_count\t" + t + "_count\t" + s +
                    "_percent\t" + t + "_percent\n";
  for (const SharedFrame &f : frames.shared) {
    out += "shared\t" + f.frame + "\t" + std::to_string(f.source_count) +
           "\t" + std::to_string(f.target_count) + "\t" +
           Fixed(f.source_percent, 1) + "\t" + Fixed(f.target_percent, 1) +
           "\n";
  }
  for (const std::string &f : frames.only_source) {
    out += "only_" + s + "\t" + f + "\t-\t-\t-\t-\n";
  }
  for (const std::string &f : frames.only_target) {
    out += "only_" + t + "\t" + f + "\t-\t-\t-\t-\n";
  }
  return out;
}

std::string StatsJson(const Direction &direction,
                      const VerbCountComparison &counts,
                      const FrameInventoryDiff &frames, int64_t source_total,
                      int64_t target_total) {
  int64_t pairs = counts.source_more + counts.equal + counts.source_fewer;
  Json shared = Json::array();
  for (const SharedFrame &f : frames.shared) {
    shared.push_back({{"frame", f.frame},
                      {"source_count", f.source_count},
                      {"target_count", f.target_count},
                      {"source_percent", f.source_percent},
                      {"target_percent", f.target_percent}});
  }
  return Dump(
      {{"direction", DirectionJson(direction)},
       {"pairs", pairs},
       {"source_predicates", source_total},
       {"target_predicates", target_total},
       {"verb_counts",
        {{"source_more", counts.source_more},
         {"source_more_percent", Percent(counts.source_more, pairs)},
         {"equal", counts.equal},
         {"equal_percent", Percent(counts.equal, pairs)},
         {"source_fewer", counts.source_fewer},
         {"source_fewer_percent", Percent(counts.source_fewer, pairs)}}},
       {"histogram",
        {{"source", counts.source_histogram},
         {"target", counts.target_histogram}}},
       {"frames",
        {{"only_source", frames.only_source},
         {"only_target", frames.only_target},
         {"shared", std::move(shared)}}}});
}

}  // namespace crossproj
