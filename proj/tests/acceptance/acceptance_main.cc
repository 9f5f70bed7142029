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

// Acceptance checks. Each check prints one PASS or FAIL line; `--only N`
// runs a single check so ctest can register them separately.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crossproj/aligner.h"
#include "crossproj/corpus.h"
#include "crossproj/divergence.h"
#include "crossproj/embedding_store.h"
#include "crossproj/evaluator.h"
#include "crossproj/projector.h"
#include "crossproj/sinkhorn.h"
#include "published_tables.h"
#include "testing/oracles.h"
#include "testing/synthetic.h"

namespace crossproj {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string Format(const char *fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

// Appends a failure note, keeping the first few.
void Fail(Outcome &o, const std::string &what, int &shown) {
  o.pass = false;
  if (shown++ < 8) o.detail += (o.detail.empty() ? "" : "; ") + what;
}

Outcome TableArithmetic() {
  Outcome o;
  int shown = 0, cells = 0, bad = 0;
  std::map<std::pair<int, std::string>, std::vector<EvalCounts>> groups;
  std::map<std::pair<int, std::string>, EvalCounts> overall;
  for (const testing::PublishedRow &row : testing::kPublishedRows) {
    EvalCounts c{row.label, row.correct, row.false_pos, row.false_neg};
    Prf got = RoundedPrf(c);
    const double want[3] = {row.precision, row.recall, row.f1};
    const double have[3] = {got.precision, got.recall, got.f1};
    const char *names[3] = {"P", "R", "F1"};
    for (int k = 0; k < 3; ++k) {
      ++cells;
      if (std::abs(have[k] - want[k]) > 0.01 + 1e-9) {
        ++bad;
        Fail(o,
             Format("table %d %s %s %s=%.2f, published %.2f", row.table,
                    row.source_lang, row.label, names[k], have[k], want[k]),
             shown);
      }
    }
    auto key = std::make_pair(row.table, std::string(row.source_lang));
    if (std::string(row.label) == kOverallLabel) {
      overall[key] = c;
    } else {
      groups[key].push_back(c);
    }
  }
  for (const auto &[key, rows] : groups) {
    EvalCounts sum = Aggregate(rows);
    if (!overall.count(key) || !(overall[key] == sum)) {
      Fail(o,
           Format("table %d %s Overall counts %lld/%lld/%lld differ from sum",
                  key.first, key.second.c_str(), (long long)sum.correct,
                  (long long)sum.false_pos, (long long)sum.false_neg),
           shown);
    }
  }
  o.detail = Format("%d/%d cells within 0.01, %zu Overall rows summed",
                    cells - bad, cells, overall.size()) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// Builds one single-predicate pair per counted predicate and classifies
// them by fiat, so Distribution sees exactly the published counts.
Outcome DivergencePercentages() {
  Outcome o;
  int shown = 0;
  struct Column {
    const char *name;
    std::array<int64_t, 4> counts;
    std::array<double, 4> percent;
  };
  const Column columns[] = {
      {"zh", {537, 240, 284, 137}, {44.8, 20.0, 23.7, 11.4}},
      {"en", {537, 244, 76, 52}, {59.1, 26.8, 8.3, 5.7}}};
  std::string summary;
  for (const Column &col : columns) {
    std::vector<SentencePair> pairs;
    std::vector<DivergenceRecord> records;
    for (int cat = 0; cat < 4; ++cat) {
      for (int64_t n = 0; n < col.counts[cat]; ++n) {
        SentencePair p;
        p.id = Format("%s-%d-%lld", col.name, cat, (long long)n);
        p.source.lang = col.name;
        p.source.tokens = {{0, "v", Pos::kVerb}};
        p.source.predicates = {{0, "SPEAK", std::nullopt}};
        p.target.lang = "xx";
        DivergenceRecord r;
        r.pair_id = p.id;
        r.category = static_cast<Category>(cat + 1);
        if (r.category == Category::kNonVerbal) {
          r.subtype = NonVerbalSubtype::kNominal;
        }
        pairs.push_back(std::move(p));
        records.push_back(std::move(r));
      }
    }
    DistributionReport report = Distribution(pairs, records);
    summary += std::string(summary.empty() ? "" : "; ") + col.name + " as source:";
    for (int cat = 0; cat < 4; ++cat) {
      double got = report.categories[cat].percent;
      summary += Format(" %.2f", got);
      if (std::abs(got - col.percent[cat]) > 0.1 + 1e-9) {
        Fail(o,
             Format("%s category %d %.2f vs %.1f", col.name, cat + 1, got,
                    col.percent[cat]),
             shown);
      }
    }
  }
  o.detail = summary + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome SinkhornOracle() {
  Outcome o;
  int shown = 0, within = 0;
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(5, 0.2);
  double worst_gap = 0.0, worst_residual = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd cost(5, 5);
    for (int j = 0; j < 5; ++j) {
      for (int i = 0; i < 5; ++i) cost(j, i) = u(rng);
    }
    SinkhornOptions opt;
    opt.epsilon = 0.01;
    opt.tol = 1e-7;
    opt.max_iters = 1000000;
    SinkhornResult r = SinkhornPlan(cost, uniform, uniform, opt);
    double exact = testing::OptimalAssignmentCost(cost);
    double gap = (TransportCost(r.plan, cost) - exact) / exact;
    worst_gap = std::max(worst_gap, gap);
    worst_residual = std::max(worst_residual, r.residual);
    if (gap <= 0.01) {
      ++within;
    } else {
      Fail(o, Format("instance %d cost %.5f vs optimum %.5f (+%.2f%%)", trial,
                     TransportCost(r.plan, cost), exact, 100 * gap),
           shown);
    }
    if (!(r.residual < 1e-6)) {
      Fail(o, Format("instance %d residual %.2e", trial, r.residual), shown);
    }
  }
  o.detail = Format("%d/50 within 1%%, worst gap %.2f%%, worst residual %.1e",
                    within, 100 * worst_gap, worst_residual) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome IdentityEndToEnd() {
  Outcome o;
  int shown = 0;
  std::vector<SentencePair> pairs = testing::IdentityCorpus(50, 20261014);
  EmbeddingStore store = testing::IdentityEmbeddings(pairs, 32, 20261015);
  std::vector<std::string> roles;
  for (const auto &[role, unused] : FrameInventory::Bundled().roles()) {
    roles.push_back(role);
  }
  for (AlignerMode mode : {AlignerMode::kTopkS2t, AlignerMode::kOtBidir}) {
    AlignerConfig cfg;
    cfg.mode = mode;
    ProjectionRun run =
        ProjectCorpus(pairs, cfg, &store, AlignmentSource::kEmbeddings, 4);
    std::vector<std::vector<EvalCounts>> per_pair;
    int64_t predicates = 0, convergent = 0;
    for (size_t n = 0; n < pairs.size(); ++n) {
      per_pair.push_back(ScorePair(run.annotations[n], pairs[n].target));
      for (const DivergenceRecord &r : ClassifyPair(pairs[n], run.alignments[n])) {
        ++predicates;
        convergent += r.category == Category::kFrameConvergence;
      }
    }
    EvalCounts total = Aggregate(MergeByLabel(per_pair, roles));
    Prf prf = RoundedPrf(total);
    std::string name(AlignerModeName(mode));
    o.detail += Format("%s%s F1=%.2f (C=%lld), %lld/%lld category 1",
                       o.detail.empty() ? "" : "; ", name.c_str(), prf.f1,
                       (long long)total.correct, (long long)convergent,
                       (long long)predicates);
    if (prf.f1 != 100.0 || convergent != predicates || run.nonconverged != 0) {
      Fail(o, name + " not exact", shown);
    }
  }
  return o;
}

Outcome WorkedExample() {
  Outcome o;
  int shown = 0;
  SentencePair pair =
      ParseCorpus(testing::ReadTestFile("worked_example.jsonl")).at(0);
  TokenAlignment gold = GoldTokenAlignment(pair);
  std::vector<DivergenceRecord> en = ClassifyPair(pair, gold);
  std::vector<DivergenceRecord> zh =
      ClassifyPair(pair.Swapped(), Transposed(gold));
  auto category_of = [](const std::vector<DivergenceRecord> &records,
                        const std::string &verb) -> const DivergenceRecord * {
    for (const DivergenceRecord &r : records) {
      if (r.verb == verb) return &r;
    }
    return nullptr;
  };
  struct Want {
    const std::vector<DivergenceRecord> *records;
    const char *verb;
    Category category;
  };
  const Want wants[] = {
      {&en, "said", Category::kFrameConvergence},
      {&en, "continue", Category::kFrameConvergence},
      {&en, "prefer", Category::kFrameDivergence},
      {&zh, "\xE8\xAE\xA8\xE8\xAE\xBA", Category::kNonVerbal}};
  for (const Want &w : wants) {
    const DivergenceRecord *r = category_of(*w.records, w.verb);
    if (r == nullptr || r->category != w.category) {
      Fail(o, Format("%s misclassified", w.verb), shown);
    } else {
      o.detail += Format("%s%s->%d", o.detail.empty() ? "" : ", ", w.verb,
                         static_cast<int>(r->category));
    }
  }
  const DivergenceRecord *discuss = category_of(zh, "\xE8\xAE\xA8\xE8\xAE\xBA");
  if (discuss == nullptr || discuss->subtype != NonVerbalSubtype::kNominal ||
      pair.source.tokens[discuss->target_token.value_or(0)].surface !=
          "discussion") {
    Fail(o, "discussion counterpart is not nominal", shown);
  }
  ProjectedAnnotation projected = ProjectPair(pair, gold);
  std::vector<FrameDiffRecord> diff =
      DiffProjectedFrames(projected, pair.target, {en, zh});
  bool found = false;
  for (const FrameDiffRecord &r : diff) {
    found |= r.verb == "\xE5\xB8\x8C\xE6\x9C\x9B" &&
             r.projected_frame == "CHOOSE" &&
             r.gold_frame == "REQUIRE_NEED_WANT_HOPE" &&
             r.category == Category::kFrameDivergence;
  }
  if (!found) Fail(o, "frame diff lacks the hope record", shown);
  o.detail += Format(", %zu frame diff records", diff.size());
  return o;
}

Outcome RoundTrips() {
  Outcome o;
  int shown = 0, corpus_ok = 0, cpeb_ok = 0;
  testing::Rng rng(20261014);
  for (int n = 0; n < 1000; ++n) {
    std::vector<SentencePair> pairs;
    int count = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < count; ++k) {
      pairs.push_back(testing::RandomPair(rng, Format("rt-%d-%d", n, k)));
    }
    std::string text = SerializeCorpus(pairs);
    std::vector<SentencePair> back = ParseCorpus(text);
    if (back == pairs && SerializeCorpus(back) == text) {
      ++corpus_ok;
    } else {
      Fail(o, Format("corpus instance %d", n), shown);
    }

    EmbeddingStore store =
        testing::RandomStore(rng, static_cast<int>(rng() % 5), 1 + n % 16);
    std::string bytes = SerializeEmbeddings(store);
    EmbeddingStore loaded = LoadEmbeddings(bytes);
    if (loaded == store && SerializeEmbeddings(loaded) == bytes) {
      ++cpeb_ok;
    } else {
      Fail(o, Format("embedding instance %d", n), shown);
    }
  }
  o.detail = Format("corpus %d/1000, embeddings %d/1000 bit-exact", corpus_ok,
                    cpeb_ok) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

std::string Slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome Determinism() {
  Outcome o;
  int shown = 0;
  std::random_device rd;
  fs::path dir = fs::temp_directory_path() /
                 Format("crossproj-determinism-%u%u", rd(), rd());
  fs::create_directories(dir);
  testing::Rng rng(20261014);
  std::vector<SentencePair> pairs;
  EmbeddingStore store(16);
  for (int n = 0; n < 60; ++n) {
    SentencePair p = testing::RandomPair(rng, Format("det-%d", n));
    store.Add({p.id, testing::RandomMatrix(rng, p.source.size(), 16),
               testing::RandomMatrix(rng, p.target.size(), 16)});
    pairs.push_back(std::move(p));
  }
  // Every record shares one direction.
  for (SentencePair &p : pairs) p.source.lang = "en";
  std::ofstream(dir / "corpus.jsonl", std::ios::binary) << SerializeCorpus(pairs);
  std::ofstream(dir / "emb.cpeb", std::ios::binary) << SerializeEmbeddings(store);

  int compared = 0;
  for (const char *aligner : {"topk", "ot"}) {
    std::map<int, std::map<std::string, std::string>> outputs;
    for (int workers : {1, 8}) {
      fs::path out = dir / Format("%s-%d", aligner, workers);
      std::string cmd = Format(
          "CROSSPROJ_WORKERS=%d '%s' project --corpus '%s' --embeddings '%s' "
          "--aligner %s --out '%s' 2>'%s'",
          workers, CROSSPROJ_CLI_PATH, (dir / "corpus.jsonl").c_str(),
          (dir / "emb.cpeb").c_str(), aligner, out.c_str(),
          (dir / "stderr.txt").c_str());
      int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        Fail(o, Format("%s with %d workers exited %d: %s", aligner, workers,
                       status, Slurp(dir / "stderr.txt").c_str()),
             shown);
        continue;
      }
      for (const auto &entry : fs::directory_iterator(out)) {
        std::string name = entry.path().filename().string();
        // The manifest records timing and worker count by design.
        if (name != "manifest.json") outputs[workers][name] = Slurp(entry.path());
      }
    }
    if (outputs[1].empty() || outputs[1] != outputs[8]) {
      Fail(o, Format("%s reports differ between 1 and 8 workers", aligner), shown);
    } else {
      compared += static_cast<int>(outputs[1].size());
    }
  }
  fs::remove_all(dir);
  o.detail = Format("%d report files byte-identical across worker counts",
                    compared) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

struct Check {
  const char *name;
  std::function<Outcome()> run;
  double seconds_limit;  // 0: no limit
};

}  // namespace
}  // namespace crossproj

int main(int argc, char **argv) {
  using namespace crossproj;
  const std::vector<Check> checks = {
      {"table arithmetic", TableArithmetic, 1.0},
      {"divergence percentages", DivergencePercentages, 1.0},
      {"sinkhorn vs assignment oracle", SinkhornOracle, 10.0},
      {"identity end-to-end", IdentityEndToEnd, 5.0},
      {"worked example", WorkedExample, 0.0},
      {"format round trips", RoundTrips, 0.0},
      {"worker-count determinism", Determinism, 0.0},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(checks.size())) {
    std::fprintf(stderr, "no check %d\n", only);
    return 2;
  }
  int failed = 0;
  for (size_t i = 0; i < checks.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (checks[i].seconds_limit > 0 && seconds > checks[i].seconds_limit) {
      o.pass = false;
      o.detail += Format("; took %.2f s, limit %.0f s", seconds,
                         checks[i].seconds_limit);
    }
    std::printf("%s [%zu] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                checks[i].name, seconds, o.detail.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
