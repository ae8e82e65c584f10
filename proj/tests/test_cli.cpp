#include "oracles.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

namespace tga {
namespace {

using testing::corpus_path;
namespace fs = std::filesystem;

struct Outcome {
  int rc = -1;
  std::string out;  // stdout and stderr together
};

Outcome tga_cli(const std::string& args) {
  const std::string cmd = std::string("'") + TGA_CLI_PATH + "' " + args + " 2>&1";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) o.out.append(buf, n);
  const int status = pclose(p);
  o.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("tga_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

TEST_F(Cli, CheckReportsShape) {
  auto o = tga_cli("check " + quoted(corpus_path("paper_a3")));
  EXPECT_EQ(o.rc, 0) << o.out;
  EXPECT_NE(o.out.find("2 clocks, 4 locations"), std::string::npos) << o.out;
}

TEST_F(Cli, ParseErrorsCarryLineNumbers) {
  std::ofstream(file("bad.tg")) << "game g\nclocks x\nloc l initial inv true\nedge l -> q : p1.a when true reset {}\n"
                                   "safe l\n";
  auto o = tga_cli("check " + quoted(file("bad.tg")));
  EXPECT_EQ(o.rc, 1);
  EXPECT_NE(o.out.find("bad.tg:4:"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("undeclared location q"), std::string::npos) << o.out;
}

TEST_F(Cli, MissingFile) {
  auto o = tga_cli("synth " + quoted(file("missing.tg")));
  EXPECT_EQ(o.rc, 1);
  EXPECT_NE(o.out.find("file not found"), std::string::npos) << o.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(tga_cli("").rc, 1);
  EXPECT_EQ(tga_cli("frobnicate").rc, 1);
  EXPECT_EQ(tga_cli("check").rc, 1);
  EXPECT_EQ(tga_cli("--help").rc, 0);
}

TEST_F(Cli, ExplainTwoClocks) {
  auto o = tga_cli("explain --clocks 2");
  EXPECT_EQ(o.rc, 0) << o.out;
  EXPECT_NE(o.out.find("m_F = 3 (|C|+1 = 3)"), std::string::npos) << o.out;
}

TEST_F(Cli, EmptyWinningSetExitsTwo) {
  auto o = tga_cli("synth " + quoted(corpus_path("zeno_only")) + " -o " + quoted(file("z.json")));
  EXPECT_EQ(o.rc, 2) << o.out;
  EXPECT_FALSE(fs::exists(file("z.json")));
}

TEST_F(Cli, SolveJson) {
  auto o = tga_cli("--json solve " + quoted(corpus_path("trivial")));
  ASSERT_EQ(o.rc, 0) << o.out;
  auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["objective"], "phi-dagger");
  EXPECT_EQ(j["winning"].size(), 4u);
  EXPECT_EQ(j["game_states"], j["winning_states"]);
}

TEST_F(Cli, RegionsListsAndCounts) {
  auto o = tga_cli("regions " + quoted(corpus_path("trivial")));
  EXPECT_EQ(o.rc, 0);
  EXPECT_NE(o.out.find("4 regions (bound 8)"), std::string::npos) << o.out;
}

TEST_F(Cli, SynthesizeThenSimulate) {
  const std::string ctrl = file("a3.json");
  auto s = tga_cli("synth " + quoted(corpus_path("paper_a3")) + " -o " + quoted(ctrl));
  ASSERT_EQ(s.rc, 0) << s.out;
  ASSERT_TRUE(fs::exists(ctrl));

  const std::string trace = file("t.jsonl");
  auto r = tga_cli("--json --seed 4 simulate " + quoted(corpus_path("paper_a3")) + " " + quoted(ctrl) +
                   " --adversary zeno --rounds 400 --threshold 40 --trace " + quoted(trace));
  ASSERT_EQ(r.rc, 0) << r.out;
  auto v = nlohmann::json::parse(r.out);
  EXPECT_EQ(v["receptive"], true) << r.out;
  EXPECT_EQ(v["safe"], true);
  std::ifstream in(trace);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    auto rec = nlohmann::json::parse(line);
    EXPECT_EQ(rec["round"], n);
    ++n;
  }
  EXPECT_EQ(n, 400);

  // a failing verdict is still a successful run
  auto f = tga_cli("simulate " + quoted(corpus_path("paper_a3")) + " " + quoted(ctrl) +
                   " --adversary zeno --rounds 100 --threshold 1000 --suffix 100");
  EXPECT_EQ(f.rc, 0) << f.out;
  EXPECT_EQ(f.out.rfind("FAIL", 0), 0u) << f.out;
}

TEST_F(Cli, ScriptedAdversaryRuleViolation) {
  const std::string ctrl = file("a3.json");
  ASSERT_EQ(tga_cli("synth " + quoted(corpus_path("paper_a3")) + " -o " + quoted(ctrl)).rc, 0);
  std::ofstream(file("s.txt")) << "0 -\n1/2 a2_0\n";
  auto o = tga_cli("simulate " + quoted(corpus_path("paper_a3")) + " " + quoted(ctrl) +
                   " --adversary scripted --script " + quoted(file("s.txt")) + " --rounds 10");
  EXPECT_EQ(o.rc, 1);
  EXPECT_NE(o.out.find("player 2 proposed an unavailable move"), std::string::npos) << o.out;
}

TEST_F(Cli, CrossValidation) {
  auto o = tga_cli("synth " + quoted(corpus_path("paper_a3")) + " --cross-validate -o " + quoted(file("c.json")));
  EXPECT_EQ(o.rc, 0) << o.out;
  EXPECT_NE(o.out.find("cross-check agrees"), std::string::npos) << o.out;
}

}  // namespace
}  // namespace tga
