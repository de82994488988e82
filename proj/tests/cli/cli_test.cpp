#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SWITCHMINER_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("switchminer-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string data(const std::string& name) const { return std::string(SWITCHMINER_TEST_DATA) + "/" + name; }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DiscoverWritesArtifacts) {
  const auto r = run("discover --input " + data("running_example.xes") + " --delete-switch-traces --out " +
                     tmp("m.pnml") + " --tree-out " + tmp("t.txt") + " --dot " + tmp("m.dot"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(slurp(tmp("t.txt")), "X(->(A, B=>{E}, C), ->(D, E, F))\n");
  EXPECT_NE(slurp(tmp("m.pnml")).find("<pnml"), std::string::npos);
  EXPECT_NE(slurp(tmp("m.dot")).find("digraph"), std::string::npos);

  const auto s = run("soundness --model " + tmp("m.pnml"));
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_NE(s.out.find("sound               yes"), std::string::npos) << s.out;
}

TEST_F(Cli, DiscoveryIsDeterministic) {
  ASSERT_EQ(run("discover --input " + data("switch_log_2.xes") + " --out " + tmp("a.pnml") + " --tree-out " +
                tmp("a.txt")).exit_code, 0);
  ASSERT_EQ(run("discover --input " + data("switch_log_2.xes") + " --out " + tmp("b.pnml") + " --tree-out " +
                tmp("b.txt")).exit_code, 0);
  EXPECT_EQ(slurp(tmp("a.txt")), slurp(tmp("b.txt")));
  EXPECT_EQ(slurp(tmp("a.pnml")), slurp(tmp("b.pnml")));
}

TEST_F(Cli, EvalReportsPerfectScoresOnRowOne) {
  ASSERT_EQ(run("discover --input " + data("switch_log_1.xes") + " --delete-switch-traces --out " + tmp("m.pnml"))
                .exit_code, 0);
  const auto r = run("eval --log " + data("switch_log_1.xes") + " --model " + tmp("m.pnml") + " --report " +
                     tmp("r.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = nlohmann::json::parse(slurp(tmp("r.json")));
  EXPECT_DOUBLE_EQ(j["fitness"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["precision"].get<double>(), 1.0);
}

TEST_F(Cli, CsvInput) {
  std::ofstream(tmp("l.csv")) << "case,activity\n1,A\n1,B\n2,C\n";
  const auto r = run("discover --input " + tmp("l.csv") + " --out " + tmp("m.pnml") + " --tree-out " + tmp("t.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(slurp(tmp("t.txt")), "X(->(A, B), C)\n");
}

TEST_F(Cli, PlayoutAndConvert) {
  std::ofstream(tmp("t.txt")) << "X(->(A, B=>{E}, C), ->(D, E, F))\n";
  const auto r = run("playout --tree " + tmp("t.txt") + " --out " + tmp("l.xes"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(slurp(tmp("l.xes")).find("<trace>"), std::string::npos);
  const auto stdout_run = run("playout --tree " + tmp("t.txt") + " --mode sample --traces 5 --seed 3");
  EXPECT_EQ(stdout_run.exit_code, 0);
  EXPECT_NE(stdout_run.out.find("<log"), std::string::npos);
  EXPECT_EQ(run("convert --tree " + tmp("t.txt") + " --pnml " + tmp("c.pnml") + " --dot " + tmp("c.dot") +
                " --tree-dot " + tmp("tree.dot")).exit_code, 0);
  EXPECT_TRUE(fs::exists(tmp("tree.dot")));
  EXPECT_EQ(run("convert --model " + tmp("c.pnml") + " --dot " + tmp("d.dot")).exit_code, 0);
}

TEST_F(Cli, UnsoundModelIsAFindingNotAFailure) {
  std::ofstream(tmp("u.pnml")) << R"(<pnml><net id="n"><page id="p">
    <place id="i"><initialMarking><text>1</text></initialMarking></place><place id="o"/><place id="x"/>
    <transition id="a"><name><text>a</text></name></transition>
    <transition id="b"><name><text>b</text></name></transition>
    <arc id="1" source="i" target="a"/><arc id="2" source="a" target="o"/><arc id="3" source="a" target="x"/>
    <arc id="4" source="x" target="b"/><arc id="5" source="b" target="o"/>
  </page></net></pnml>)";
  const auto r = run("soundness --model " + tmp("u.pnml"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("sound               no"), std::string::npos) << r.out;
}

TEST_F(Cli, InputErrorsExitOne) {
  EXPECT_EQ(run("discover --input /nonexistent.xes --out " + tmp("m.pnml")).exit_code, 1);
  EXPECT_EQ(run("discover --bogus").exit_code, 1);
  EXPECT_EQ(run("").exit_code, 1);
  std::ofstream(tmp("bad.txt")) << "X(A,";
  const auto r = run("playout --tree " + tmp("bad.txt"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("offset"), std::string::npos);
  std::ofstream(tmp("viol.txt")) << "->(A=>{B}, B)";
  EXPECT_EQ(run("convert --tree " + tmp("viol.txt") + " --pnml " + tmp("v.pnml")).exit_code, 1);
  EXPECT_EQ(run("discover --input " + data("running_example.xes") + " --noise 3 --out " + tmp("m.pnml")).exit_code, 1);
}
