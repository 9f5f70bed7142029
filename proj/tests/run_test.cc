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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "crossproj/error.h"
#include "crossproj/report.h"
#include "json.hpp"
#include "testing/synthetic.h"

namespace crossproj {
namespace {

namespace fs = std::filesystem;

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() /
           ("crossproj-run-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir_);
    corpus_ = (fs::path(CROSSPROJ_TEST_DATA_DIR) / "worked_example.jsonl").string();
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Read(const std::string &name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  std::string Write(const std::string &name, const std::string &text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return (dir_ / name).string();
  }

  RunConfig Config(Command command) const {
    RunConfig c;
    c.command = command;
    c.corpus_path = corpus_;
    c.out_dir = (dir_ / "out").string();
    c.alignment = AlignmentSource::kGold;
    return c;
  }

  // Runs the built CLI through the shell; returns its exit status.
  int Cli(const std::string &args, const std::string &env = "") const {
    std::string cmd = env + " '" + std::string(CROSSPROJ_CLI_PATH) + "' " +
                      args + " >'" + (dir_ / "cli.out").string() + "' 2>'" +
                      (dir_ / "cli.err").string() + "'";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string corpus_;
};

TEST(RunHelpersTest, Sha256) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(Sha256Hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(RunHelpersTest, Formats) {
  ReportFormats f = ParseFormats("json,csv");
  EXPECT_TRUE(f.json);
  EXPECT_FALSE(f.tsv);
  EXPECT_TRUE(f.csv);
  EXPECT_THROW(ParseFormats("json,xml"), Error);
  EXPECT_EQ(CommandName(Command::kDivergence), "divergence");
}

TEST(RunHelpersTest, EvaluationTable) {
  std::vector<EvalCounts> rows = {{"predicates", 442, 56, 228}};
  std::string tsv = EvaluationTsv(rows);
  EXPECT_EQ(tsv,
            "label\tC\tFP\tFN\tP\tR\tF1\n"
            "predicates\t442\t56\t228\t88.76\t65.97\t75.68\n"
            "Overall\t442\t56\t228\t88.76\t65.97\t75.68\n");
}

TEST_F(RunTest, ProjectWritesReportsAndManifest) {
  RunConfig c = Config(Command::kProject);
  RunManifest m = Execute(c);
  EXPECT_EQ(m.outputs, (std::vector<std::string>{"projections.jsonl", "drops.tsv"}));
  std::string projections = Read("out/projections.jsonl");
  EXPECT_EQ(ParseProjections(projections).size(), 1u);
  auto manifest = nlohmann::json::parse(Read("out/manifest.json"));
  EXPECT_EQ(manifest["command"], "project");
  EXPECT_EQ(manifest["version"], "0.1.0");
  EXPECT_EQ(manifest["inputs"]["corpus"]["sha256"],
            Sha256Hex(testing::ReadTestFile("worked_example.jsonl")));
  EXPECT_TRUE(manifest.contains("duration_seconds"));
  EXPECT_EQ(manifest["sinkhorn_nonconverged"], 0);
}

TEST_F(RunTest, EvaluateWithGoldAlignment) {
  RunConfig c = Config(Command::kEvaluate);
  Execute(c);
  std::string tsv = Read("out/evaluation.tsv");
  EXPECT_EQ(tsv.rfind("label\tC\tFP\tFN\tP\tR\tF1\npredicates\t", 0), 0u);
  EXPECT_NE(tsv.find("\nOverall\t"), std::string::npos);
  std::string diff = Read("out/frame_diff.tsv");
  EXPECT_NE(diff.find("CHOOSE\tREQUIRE_NEED_WANT_HOPE"), std::string::npos);
  auto json = nlohmann::json::parse(Read("out/evaluation.json"));
  EXPECT_TRUE(json.is_object());
}

TEST_F(RunTest, EvaluateSavedProjections) {
  RunConfig p = Config(Command::kProject);
  Execute(p);
  RunConfig e = Config(Command::kEvaluate);
  e.projections_path = (dir_ / "out" / "projections.jsonl").string();
  e.out_dir = (dir_ / "eval").string();
  Execute(e);
  RunConfig direct = Config(Command::kEvaluate);
  direct.out_dir = (dir_ / "direct").string();
  Execute(direct);
  EXPECT_EQ(Read("eval/evaluation.tsv"), Read("direct/evaluation.tsv"));
}

TEST_F(RunTest, DivergenceAndStats) {
  RunConfig d = Config(Command::kDivergence);
  d.alignment.reset();
  Execute(d);
  std::string records = Read("out/divergence_records.tsv");
  EXPECT_NE(records.find("said"), std::string::npos);
  EXPECT_NE(Read("out/categories.tsv").find("frame_convergence"),
            std::string::npos);
  RunConfig zh = Config(Command::kDivergence);
  zh.alignment.reset();
  zh.direction = "zh";
  zh.out_dir = (dir_ / "zh").string();
  Execute(zh);
  EXPECT_NE(Read("zh/subtypes.csv").find("nominal"), std::string::npos);

  RunConfig s = Config(Command::kStats);
  s.out_dir = (dir_ / "stats").string();
  RunManifest m = Execute(s);
  EXPECT_EQ(m.outputs.size(), 4u);
  auto stats = nlohmann::json::parse(Read("stats/stats.json"));
  EXPECT_TRUE(stats.is_object());
}

TEST_F(RunTest, UnknownDirectionIsAnError) {
  RunConfig c = Config(Command::kStats);
  c.direction = "fr";
  EXPECT_THROW(Execute(c), Error);
}

TEST_F(RunTest, DataErrorsCarryFileAndLine) {
  std::string good = testing::ReadTestFile("worked_example.jsonl");
  std::string bad = good;
  bad.replace(bad.find("\"role\":\"agent\""), 14, "\"role\":\"Agent\"");
  std::string path = Write("bad.jsonl", "\n" + bad);
  RunConfig c = Config(Command::kStats);
  c.corpus_path = path;
  std::ostringstream err;
  EXPECT_EQ(RunCommand(c, err), kExitDataError);
  EXPECT_NE(err.str().find("UnknownRole"), std::string::npos) << err.str();
  EXPECT_NE(err.str().find("bad.jsonl:2:"), std::string::npos) << err.str();
}

TEST_F(RunTest, StrictInventoryFlagsRolesOutsideTheFrame) {
  std::string text = testing::ReadTestFile("worked_example.jsonl");
  // AFFIRM's theme becomes asset, which the frame does not take.
  text.replace(text.find("\"role\":\"theme\""), 14, "\"role\":\"asset\"");
  RunConfig c = Config(Command::kStats);
  c.corpus_path = Write("loose.jsonl", text);
  EXPECT_NO_THROW(Execute(c));
  c.strict_inventory = true;
  try {
    Execute(c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownRole);
    EXPECT_EQ(e.line(), 1);
  }
}

TEST_F(RunTest, MissingEmbeddingsFailCleanly) {
  RunConfig c = Config(Command::kProject);
  c.alignment = AlignmentSource::kEmbeddings;
  std::ostringstream err;
  EXPECT_EQ(RunCommand(c, err), kExitDataError);
  EXPECT_FALSE(err.str().empty());
}

TEST_F(RunTest, EmbeddingsFromFile) {
  std::vector<SentencePair> pairs = testing::IdentityCorpus(5, 61);
  std::string corpus = Write("syn.jsonl", SerializeCorpus(pairs));
  std::string emb = Write(
      "syn.cpeb", SerializeEmbeddings(testing::IdentityEmbeddings(pairs, 32, 62)));
  RunConfig c = Config(Command::kEvaluate);
  c.corpus_path = corpus;
  c.embeddings_path = emb;
  c.alignment.reset();
  for (AlignerMode mode : {AlignerMode::kTopkS2t, AlignerMode::kOtBidir}) {
    c.aligner.mode = mode;
    Execute(c);
    std::string tsv = Read("out/evaluation.tsv");
    std::string overall = tsv.substr(tsv.find("\nOverall\t") + 1);
    EXPECT_NE(overall.find("\t100.00\t100.00\t100.00"), std::string::npos)
        << tsv;
  }
}

TEST_F(RunTest, CliUsageErrorsExitTwo) {
  EXPECT_EQ(Cli("--help"), 0);
  EXPECT_EQ(Cli("--version"), 0);
  EXPECT_EQ(Cli(""), kExitUsage);
  EXPECT_EQ(Cli("project --corpus '" + corpus_ + "' --bogus"), kExitUsage);
  EXPECT_EQ(Cli("project --corpus '" + (dir_ / "absent.jsonl").string() + "'"),
            kExitUsage);
  EXPECT_EQ(Cli("project --corpus '" + corpus_ + "' --k 0"), kExitUsage);
  EXPECT_EQ(Cli("project --corpus '" + corpus_ + "' --format xml"), kExitUsage);
  EXPECT_EQ(Cli("stats --corpus '" + corpus_ + "'", "CROSSPROJ_WORKERS=zero"),
            kExitUsage);
}

TEST_F(RunTest, CliDataErrorExitsOne) {
  std::string bad = testing::ReadTestFile("worked_example.jsonl");
  bad.replace(bad.find("\"role\":\"agent\""), 14, "\"role\":\"Agent\"");
  std::string path = Write("bad.jsonl", bad);
  EXPECT_EQ(Cli("stats --corpus '" + path + "' --out '" + dir_.string() + "'"),
            kExitDataError);
  std::string err = Read("cli.err");
  EXPECT_NE(err.find("UnknownRole"), std::string::npos) << err;
  EXPECT_NE(err.find(":1:"), std::string::npos) << err;
}

TEST_F(RunTest, CliSuccess) {
  std::string out = (dir_ / "cli").string();
  EXPECT_EQ(Cli("divergence --corpus '" + corpus_ + "' --out '" + out + "'"),
            kExitOk)
      << Read("cli.err");
  EXPECT_TRUE(fs::exists(fs::path(out) / "manifest.json"));
}

}  // namespace
}  // namespace crossproj
