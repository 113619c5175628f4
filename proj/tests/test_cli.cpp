#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "liftgap/io.hpp"
#include "liftgap/slack.hpp"

using namespace liftgap;
using io::Json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / ("liftgap_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs `liftgap <args>`; args are passed through the shell verbatim.
Outcome run(const std::string& args, const std::string& stdin_text = "", const std::string& env = "") {
  const auto dir = scratch();
  const auto in = dir / "stdin", out = dir / "stdout", err = dir / "stderr";
  std::ofstream(in) << stdin_text;
  const std::string cmd = std::string("cd '") + LIFTGAP_DATA + "' && " + env + " '" + LIFTGAP_CLI + "' " + args + " < '" +
                          in.string() + "' > '" + out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

Json run_json(const std::string& args, const std::string& stdin_text = "") {
  const auto r = run(args, stdin_text);
  EXPECT_EQ(r.code, 0) << r.err;
  return io::parse_json(r.out);
}

}  // namespace

TEST(Cli, OptTriangle) {
  const auto j = run_json("opt triangle.txt");
  EXPECT_EQ(j["value"], "2/3");
  EXPECT_EQ(j["witness"], "-++");
  EXPECT_EQ(j["manifest"]["command"], "opt");
  EXPECT_EQ(j["manifest"]["inputs"][0]["sha256"].get<std::string>().size(), 64u);
}

TEST(Cli, GeneratedCycleThroughStdin) {
  const auto gen = run("gen cycle --n 5");
  ASSERT_EQ(gen.code, 0);
  const auto j = run_json("opt -", gen.out);
  EXPECT_EQ(j["value"], "4/5");
  EXPECT_EQ(j["manifest"]["inputs"][0]["name"], "<stdin>");
}

TEST(Cli, FarkasTriangle) {
  const auto ok = run_json("farkas triangle.txt --c 2/3 --relaxation metric");
  EXPECT_TRUE(ok["feasible"].get<bool>());
  EXPECT_TRUE(ok["verify"].get<bool>());
  const auto bad = run_json("farkas triangle.txt --c 197/300 --relaxation metric");
  EXPECT_FALSE(bad["feasible"].get<bool>());
  EXPECT_TRUE(bad["verify"].get<bool>());
  EXPECT_TRUE(bad.contains("certificate"));
}

TEST(Cli, LpAndSa) {
  EXPECT_EQ(run_json("lp c5.txt")["value"], "4/5");
  EXPECT_EQ(run_json("lp c5.txt --relaxation universal:2")["value"], "1");
  const auto sa = run_json("sa triangle.txt --rounds 3");
  EXPECT_EQ(sa["value"], "2/3");
  EXPECT_TRUE(sa["check"]["passed"].get<bool>());
  EXPECT_EQ(run_json("sa sample.cnf --rounds 4")["value"], run_json("opt sample.cnf")["value"]);
}

TEST(Cli, TranslateChain) {
  const auto dir = scratch();
  const auto sa = run("sa triangle.txt --rounds 6");
  ASSERT_EQ(sa.code, 0);
  std::ofstream(dir / "pe.json") << sa.out;
  const auto v2e = run_json("translate --direction v2e --input '" + (dir / "pe.json").string() + "' --graph triangle.txt");
  EXPECT_TRUE(v2e["check"]["feasible"].get<bool>());
  EXPECT_TRUE(v2e["objective"]["equal"].get<bool>());
  const auto edge = run("sa-edge c5.txt --level 2");
  ASSERT_EQ(edge.code, 0);
  std::ofstream(dir / "edge.json") << edge.out;
  const auto e2v = run_json("translate --direction e2v --input '" + (dir / "edge.json").string() + "' --graph c5.txt");
  EXPECT_TRUE(e2v["check"]["passed"].get<bool>());
  EXPECT_EQ(e2v["objective"]["vertex"], "4/5");
}

TEST(Cli, SlackCsv) {
  const auto r = run("slack --n 3 --out csv");
  ASSERT_EQ(r.code, 0);
  const auto m = io::matrix_from_csv(r.out);
  EXPECT_EQ(m.size(), 10u);
  const auto slacks = slack_functions(metric_maxcut(3));
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(m[i], slacks[i].values());
}

TEST(Cli, ProtocolFiles) {
  const auto dir = scratch() / "protocol";
  const auto j = run_json("protocol --full 4 --c 7/8 --s 3/4 --T 2 --out-dir '" + dir.string() + "'");
  EXPECT_TRUE(j["error_within_tail"].get<bool>());
  EXPECT_TRUE(j["product_matches"].get<bool>());
  const auto mp = io::matrix_from_csv(slurp(dir / "Mprime.csv"));
  const auto u = io::matrix_from_csv(slurp(dir / "U.csv"));
  const auto v = io::matrix_from_csv(slurp(dir / "V.csv"));
  EXPECT_EQ(multiply(u, v), mp);
  EXPECT_EQ(io::matrix_from_csv(slurp(dir / "M.csv")).size(), mp.size());
}

TEST(Cli, RestrictRecordsSeed) {
  const auto dir = scratch();
  Json fam = Json::array();
  Json values = Json::array();
  for (int i = 0; i < 4096; ++i) values.push_back("1");
  fam.push_back(Json{{"n", 12}, {"values", values}});
  std::ofstream(dir / "fam.json") << fam.dump();
  const auto args = "restrict --family '" + (dir / "fam.json").string() + "' --n 12 --m 3 --d 1 --seed 42";
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = io::parse_json(a.out);
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 42u);
  EXPECT_EQ(j["manifest"]["seed"].get<std::uint64_t>(), 42u);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, SymmetricCheck) {
  const auto j = run_json("symmetric-check --inst0 triangle.txt --c 99/100 --d 2");
  EXPECT_TRUE(j["contradiction"].get<bool>());
  EXPECT_TRUE(j["consistent"].get<bool>());
}

TEST(Cli, GenRoundTrips) {
  const auto g = run("gen gnp --n 7 --p 1/2 --seed 3");
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(run("gen gnp --n 7 --p 1/2 --seed 3").out, g.out);
  const auto sat = run("gen 3sat --n 5 --m 9 --seed 1");
  ASSERT_EQ(sat.code, 0);
  EXPECT_EQ(sat.out.rfind("p cnf 5 9", 0), 0u);
  EXPECT_EQ(run("gen complete --n 4").out.substr(0, 4), "4 6\n");
}

TEST(Cli, ErrorsAndExitCodes) {
  auto r = run("opt missing.txt");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse_json(r.err)["error"], "malformed-input");
  r = run("opt bad_vertex.txt");
  EXPECT_EQ(r.code, 1);
  const auto e = io::parse_json(r.err);
  EXPECT_EQ(e["error"], "parse");
  EXPECT_NE(e["message"].get<std::string>().find("line 3"), std::string::npos);
  r = run("sa triangle.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(io::parse_json(r.err)["error"], "usage");
  r = run("frobnicate");
  EXPECT_EQ(r.code, 2);
  r = run("farkas triangle.txt --c 1/0");
  EXPECT_EQ(r.code, 1);
  r = run("lp triangle.txt --relaxation nonsense");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse_json(r.err)["error"], "parameter");
  r = run("sa sample.cnf --rounds 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse_json(r.err)["error"], "hypothesis");
  // Single-line JSON on stderr.
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST(Cli, HelpAndVersion) {
  auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("main-ineq"), std::string::npos);
  r = run("restrict --help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--seed"), std::string::npos);
  r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(io::kVersion), std::string::npos);
}

TEST(Cli, SizeCapsFromEnvironment) {
  const auto k5 = run("gen complete --n 5").out;
  auto r = run("sa-edge - --level 0", k5, "LIFTGAP_SIZE_CAPS=edge_max_n=4");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(io::parse_json(r.err)["error"], "size-cap");
  r = run("sa-edge - --level 0", k5);
  EXPECT_EQ(r.code, 0);
  // Level 0 is the metric polytope; all edges at 2/3 is feasible on K5.
  EXPECT_EQ(io::parse_json(r.out)["value"], "2/3");
}
