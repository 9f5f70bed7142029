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

#include "crossproj/run.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "crossproj/corpus.h"
#include "crossproj/divergence.h"
#include "crossproj/embedding_store.h"
#include "crossproj/error.h"
#include "crossproj/evaluator.h"
#include "crossproj/projector.h"
#include "crossproj/report.h"
#include "crossproj/version.h"

namespace crossproj {

namespace {

using Json = nlohmann::ordered_json;

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path);
  return buf.str();
}

template <typename Fn>
auto FromFile(const std::string &path, Fn &&fn) {
  try {
    return fn();
  } catch (const Error &e) {
    if (!e.file().empty()) throw;
    throw e.InFile(path);
  }
}

std::string_view AlignmentSourceName(AlignmentSource s) {
  switch (s) {
    case AlignmentSource::kEmbeddings:
      return "embeddings";
    case AlignmentSource::kGold:
      return "gold";
    case AlignmentSource::kGoldIfPresent:
      return "auto";
  }
  return "auto";
}

struct Corpus {
  std::vector<SentencePair> pairs;  // oriented source -> target
  std::vector<bool> swapped;
  Direction direction;
  std::string sha256;
};

Corpus LoadCorpus(const RunConfig &config) {
  const std::string &path = config.corpus_path;
  std::string bytes = ReadFile(path);
  Corpus corpus;
  corpus.sha256 = Sha256Hex(bytes);
  std::vector<int> lines;
  std::vector<SentencePair> pairs = FromFile(path, [&] {
    return ParseCorpus(bytes, FrameInventory::Bundled(), &lines);
  });

  std::set<std::string> langs;
  for (const SentencePair &p : pairs) {
    langs.insert(p.source.lang);
    langs.insert(p.target.lang);
  }
  if (langs.size() > 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "corpus mixes more than two languages")
        .InFile(path);
  }
  std::string source = config.direction.value_or(
      pairs.empty() ? std::string() : pairs.front().source.lang);
  if (!pairs.empty() && langs.count(source) == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "direction '" + source + "' is not a corpus language")
        .InFile(path);
  }
  std::string target;
  for (const std::string &l : langs) {
    if (l != source) target = l;
  }
  corpus.direction = {source, target};

  for (size_t n = 0; n < pairs.size(); ++n) {
    if (config.strict_inventory) {
      for (const Sentence *s : {&pairs[n].source, &pairs[n].target}) {
        for (const Violation &v : ValidateAgainstInventory(
                 *s, FrameInventory::Bundled(), true)) {
          const std::string &frame = s->predicates[v.predicate].frame;
          throw Error(ErrorCode::kUnknownRole,
                      "role '" + v.label + "' is outside the structure of " +
                          frame,
                      lines[n])
              .InFile(path);
        }
      }
    }
    bool swap = pairs[n].source.lang != source;
    corpus.swapped.push_back(swap);
    corpus.pairs.push_back(swap ? pairs[n].Swapped() : std::move(pairs[n]));
  }
  if (config.exclude_light_verbs) {
    corpus.pairs = StripPredicates(corpus.pairs, DefaultLightVerbs());
  }
  return corpus;
}

struct Embeddings {
  std::optional<EmbeddingStore> store;
  std::string sha256;
};

Embeddings LoadStore(const RunConfig &config, const Corpus &corpus) {
  Embeddings out;
  if (!config.embeddings_path) return out;
  const std::string &path = *config.embeddings_path;
  std::string bytes = ReadFile(path);
  out.sha256 = Sha256Hex(bytes);
  EmbeddingStore raw = FromFile(path, [&] { return LoadEmbeddings(bytes); });
  std::map<std::string, bool, std::less<>> swapped;
  for (size_t n = 0; n < corpus.pairs.size(); ++n) {
    swapped[corpus.pairs[n].id] = corpus.swapped[n];
  }
  EmbeddingStore oriented(raw.dim());
  for (const EmbeddingPair &p : raw.pairs()) {
    auto it = swapped.find(p.sentence_id);
    oriented.Add(it != swapped.end() && it->second ? p.Swapped() : p);
  }
  out.store = std::move(oriented);
  return out;
}

class Writer {
 public:
  Writer(const std::string &dir, RunManifest &manifest)
      : dir_(dir), manifest_(manifest) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir);
  }

  void Write(const std::string &name, const std::string &content) {
    std::filesystem::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    manifest_.outputs.push_back(name);
  }

 private:
  std::filesystem::path dir_;
  RunManifest &manifest_;
};

const EmbeddingStore *StoreOrNull(const Embeddings &e) {
  return e.store ? &*e.store : nullptr;
}

bool AllGold(const Corpus &corpus) {
  for (const SentencePair &p : corpus.pairs) {
    if (!p.gold_alignment) return false;
  }
  return true;
}

void RunProject(const RunConfig &config, const Corpus &corpus,
                const Embeddings &emb, Writer &out, RunManifest &manifest) {
  ProjectionRun run = ProjectCorpus(
      corpus.pairs, config.aligner, StoreOrNull(emb),
      config.alignment.value_or(AlignmentSource::kEmbeddings), config.workers);
  manifest.nonconverged = run.nonconverged;
  if (config.formats.json) {
    out.Write("projections.jsonl",
              SerializeProjections(corpus.pairs, run.annotations));
  }
  if (config.formats.tsv) out.Write("drops.tsv", DropSummaryTsv(run.annotations));
}

void RunEvaluate(const RunConfig &config, const Corpus &corpus,
                 const Embeddings &emb, Writer &out, RunManifest &manifest) {
  std::vector<ProjectedAnnotation> projected;
  if (config.projections_path) {
    const std::string &path = *config.projections_path;
    std::string bytes = ReadFile(path);
    std::vector<ProjectedAnnotation> parsed =
        FromFile(path, [&] { return ParseProjections(bytes); });
    std::map<std::string, ProjectedAnnotation, std::less<>> by_id;
    for (ProjectedAnnotation &p : parsed) {
      std::string id = p.pair_id;
      if (!by_id.emplace(id, std::move(p)).second) {
        throw Error(ErrorCode::kDuplicateId,
                    "projection for '" + id + "' repeated")
            .InFile(path);
      }
    }
    for (const SentencePair &pair : corpus.pairs) {
      auto it = by_id.find(pair.id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::kCoverageGap,
                    "no projection for pair '" + pair.id + "'")
            .InFile(path);
      }
      if (it->second.lang != pair.target.lang) {
        throw Error(ErrorCode::kSentenceMismatch,
                    "projection for '" + pair.id + "' targets " +
                        it->second.lang + ", expected " + pair.target.lang)
            .InFile(path);
      }
      projected.push_back(std::move(it->second));
    }
  } else {
    ProjectionRun run = ProjectCorpus(
        corpus.pairs, config.aligner, StoreOrNull(emb),
        config.alignment.value_or(AlignmentSource::kEmbeddings),
        config.workers);
    manifest.nonconverged = run.nonconverged;
    projected = std::move(run.annotations);
  }

  ScoreOptions score{config.position_only};
  std::vector<std::vector<EvalCounts>> per_pair;
  for (size_t n = 0; n < corpus.pairs.size(); ++n) {
    per_pair.push_back(ScorePair(projected[n], corpus.pairs[n].target, score));
  }
  std::vector<std::string> roles;
  for (const auto &[role, unused] : FrameInventory::Bundled().roles()) {
    roles.push_back(role);
  }
  std::vector<EvalCounts> rows = MergeByLabel(per_pair, roles);
  if (config.formats.tsv) out.Write("evaluation.tsv", EvaluationTsv(rows));
  if (config.formats.json) {
    out.Write("evaluation.json", EvaluationJson(corpus.direction, rows));
  }

  // Categories for the frame diff need an alignment of every pair.
  if (!emb.store && !AllGold(corpus)) {
    manifest.warnings.push_back(
        "frame diff skipped: pairs without gold alignment need embeddings");
    return;
  }
  CorpusAlignment aligned =
      AlignCorpus(corpus.pairs, StoreOrNull(emb), config.aligner,
                  AlignmentSource::kGoldIfPresent, config.workers);
  manifest.nonconverged += aligned.nonconverged;
  ClassifyOptions classify{config.frame_only};
  std::vector<PairFrameDiff> diffs;
  for (size_t n = 0; n < corpus.pairs.size(); ++n) {
    const SentencePair &pair = corpus.pairs[n];
    std::vector<DivergenceRecord> forward =
        ClassifyPair(pair, aligned.links[n], classify);
    std::vector<DivergenceRecord> reverse = ClassifyPair(
        pair.Swapped(), Transposed(aligned.links[n]), classify);
    std::vector<FrameDiffRecord> records =
        DiffProjectedFrames(projected[n], pair.target, {forward, reverse});
    if (!records.empty()) diffs.push_back({pair.id, std::move(records)});
  }
  if (config.formats.tsv) out.Write("frame_diff.tsv", FrameDiffTsv(diffs));
  if (config.formats.json) {
    out.Write("frame_diff.json", FrameDiffJson(corpus.direction, diffs));
  }
}

void RunDivergence(const RunConfig &config, const Corpus &corpus,
                   const Embeddings &emb, Writer &out, RunManifest &manifest) {
  CorpusAlignment aligned = AlignCorpus(
      corpus.pairs, StoreOrNull(emb), config.aligner,
      config.alignment.value_or(AlignmentSource::kGoldIfPresent),
      config.workers);
  manifest.nonconverged = aligned.nonconverged;
  ClassifyOptions classify{config.frame_only};
  std::vector<DivergenceRecord> records;
  for (size_t n = 0; n < corpus.pairs.size(); ++n) {
    for (DivergenceRecord &r :
         ClassifyPair(corpus.pairs[n], aligned.links[n], classify)) {
      records.push_back(std::move(r));
    }
  }
  DistributionReport report = Distribution(corpus.pairs, records);
  report.source_lang = corpus.direction.source_lang;
  report.target_lang = corpus.direction.target_lang;
  std::vector<UntranslatedVerb> untranslated = UntranslatedVerbTable(records);
  if (config.formats.json) {
    out.Write("divergence.json", DivergenceJson(report, records));
  }
  if (config.formats.tsv) {
    out.Write("divergence_records.tsv", DivergenceRecordsTsv(records));
    out.Write("categories.tsv", CategoriesTsv(report));
    out.Write("untranslated.tsv", UntranslatedTsv(untranslated));
  }
  if (config.formats.csv) out.Write("subtypes.csv", SubtypesCsv(report));
}

void RunStats(const RunConfig &config, const Corpus &corpus, Writer &out) {
  VerbCountComparison counts = CompareVerbCounts(corpus.pairs);
  FrameInventoryDiff frames = ComputeFrameInventoryDiff(corpus.pairs);
  int64_t source_total = 0, target_total = 0;
  for (const SentencePair &p : corpus.pairs) {
    source_total += static_cast<int64_t>(p.source.predicates.size());
    target_total += static_cast<int64_t>(p.target.predicates.size());
  }
  if (config.formats.json) {
    out.Write("stats.json", StatsJson(corpus.direction, counts, frames,
                                      source_total, target_total));
  }
  if (config.formats.tsv) {
    out.Write("verb_counts.tsv", VerbCountsTsv(corpus.direction, counts));
    out.Write("frames.tsv", FramesTsv(corpus.direction, frames));
  }
  if (config.formats.csv) {
    out.Write("histogram.csv", HistogramCsv(corpus.direction, counts));
  }
}

Json InputJson(const std::optional<std::string> &path,
               const std::string &sha256) {
  if (!path) return nullptr;
  return {{"path", *path}, {"sha256", sha256}};
}

std::string ManifestJson(const RunConfig &config, const Corpus &corpus,
                         const Embeddings &emb,
                         const std::string &projections_sha256,
                         const RunManifest &manifest, double seconds) {
  const AlignerConfig &a = config.aligner;
  Json formats = Json::array();
  if (config.formats.json) formats.push_back("json");
  if (config.formats.tsv) formats.push_back("tsv");
  if (config.formats.csv) formats.push_back("csv");
  Json alignment = config.alignment
                       ? Json(AlignmentSourceName(*config.alignment))
                       : Json(nullptr);
  Json j = {
      {"tool", "crossproj"},
      {"version", kVersion},
      {"command", CommandName(config.command)},
      {"config",
       {{"direction", corpus.direction.source_lang},
        {"target", corpus.direction.target_lang},
        {"aligner",
         {{"mode", AlignerModeName(a.mode)},
          {"k", a.k},
          {"epsilon", a.epsilon},
          {"max_iters", a.max_iters},
          {"tol", a.tol},
          {"threshold", a.threshold},
          {"temperature", a.temperature}}},
        {"alignment", std::move(alignment)},
        {"formats", std::move(formats)},
        {"strict_inventory", config.strict_inventory},
        {"exclude_light_verbs", config.exclude_light_verbs},
        {"position_only", config.position_only},
        {"frame_only", config.frame_only},
        {"workers", config.workers}}},
      {"inputs",
       {{"corpus", InputJson(config.corpus_path, corpus.sha256)},
        {"embeddings", InputJson(config.embeddings_path, emb.sha256)},
        {"projections",
         InputJson(config.projections_path, projections_sha256)}}},
      {"outputs", manifest.outputs},
      {"warnings", manifest.warnings},
      {"sinkhorn_nonconverged", manifest.nonconverged},
      {"duration_seconds", seconds}};
  return j.dump(2) + "\n";
}

}  // namespace

std::string_view CommandName(Command command) {
  switch (command) {
    case Command::kProject:
      return "project";
    case Command::kEvaluate:
      return "evaluate";
    case Command::kDivergence:
      return "divergence";
    case Command::kStats:
      return "stats";
  }
  return "project";
}

ReportFormats ParseFormats(std::string_view list) {
  ReportFormats out{false, false, false};
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t comma = list.find(',', pos);
    std::string_view item =
        list.substr(pos, comma == std::string_view::npos ? list.npos
                                                         : comma - pos);
    if (item == "json") {
      out.json = true;
    } else if (item == "tsv") {
      out.tsv = true;
    } else if (item == "csv") {
      out.csv = true;
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown format '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &size, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "sha256 failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

RunManifest Execute(const RunConfig &config) {
  auto start = std::chrono::steady_clock::now();
  config.aligner.Validate();
  Corpus corpus = LoadCorpus(config);
  Embeddings emb = LoadStore(config, corpus);
  std::string projections_sha256;
  if (config.projections_path) {
    projections_sha256 = Sha256Hex(ReadFile(*config.projections_path));
  }

  RunManifest manifest;
  Writer out(config.out_dir, manifest);
  switch (config.command) {
    case Command::kProject:
      RunProject(config, corpus, emb, out, manifest);
      break;
    case Command::kEvaluate:
      RunEvaluate(config, corpus, emb, out, manifest);
      break;
    case Command::kDivergence:
      RunDivergence(config, corpus, emb, out, manifest);
      break;
    case Command::kStats:
      RunStats(config, corpus, out);
      break;
  }
  if (manifest.nonconverged > 0) {
    manifest.warnings.push_back("sinkhorn did not converge on " +
                                std::to_string(manifest.nonconverged) +
                                " pairs");
  }
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  std::string text = ManifestJson(config, corpus, emb, projections_sha256,
                                  manifest, seconds);
  std::ofstream mf(std::filesystem::path(config.out_dir) / "manifest.json",
                   std::ios::binary | std::ios::trunc);
  mf << text;
  mf.close();
  if (!mf) throw Error(ErrorCode::kIo, "cannot write manifest.json");
  return manifest;
}

int RunCommand(const RunConfig &config, std::ostream &err) {
  try {
    RunManifest manifest = Execute(config);
    for (const std::string &w : manifest.warnings) {
      err << "crossproj: warning: " << w << "\n";
    }
    return kExitOk;
  } catch (const Error &e) {
    err << "crossproj: error: " << e.what() << "\n";
  } catch (const std::exception &e) {
    err << "crossproj: error: " << e.what() << "\n";
  }
  return kExitDataError;
}

}  // namespace crossproj
