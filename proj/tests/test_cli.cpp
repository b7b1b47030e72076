#include <gtest/gtest.h>

#include <sstream>

#include "bh/cli.hpp"

using namespace bh;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const CliRun r = run_cli(args);
  EXPECT_EQ(r.code, kExitPass) << r.err;
  return Json::parse(r.out);
}

}  // namespace

TEST(Cli, CurveVerify) {
  const CliRun r = run_cli({"--format", "text", "curve", "--q", "8", "--verify"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("curve: PASS"), std::string::npos);
}

TEST(Cli, NodesCount) {
  const Json j = run_json({"nodes", "--q", "4"});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["artifacts"]["nodes"].size(), 6u);
  EXPECT_EQ(run_json({"nodes", "--q", "5"})["artifacts"]["nodes"].size(), 10u);
}

TEST(Cli, K3QuarticJson) {
  const Json j = run_json({"k3", "--case", "quartic", "--mode", "computed"});
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["artifacts"]["determinant"], "-9");
  EXPECT_EQ(j["artifacts"]["artin_sigma"], 1);
  EXPECT_EQ(j["artifacts"]["gram"]["rows"].size(), 22u);
}

TEST(Cli, K3SexticTextTable) {
  const CliRun r = run_cli({"--format", "text", "k3", "--case", "sextic", "--mode", "table"});
  EXPECT_EQ(r.code, kExitPass) << r.out;
  EXPECT_NE(r.out.find("C_{14}"), std::string::npos);
}

TEST(Cli, MutationsFail) {
  EXPECT_EQ(run_cli({"curve", "--q", "3", "--verify", "--mutate"}).code, kExitFail);
  EXPECT_EQ(run_cli({"aut", "--q", "3", "--corrupt-lift"}).code, kExitFail);
  EXPECT_EQ(run_cli({"unirational", "--q", "3", "--flip-sign"}).code, kExitFail);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"curve", "--q", "6"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"curve", "--q", "49", "--verify"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"curve"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"cover", "--q", "3", "--d", "3"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"split", "--q", "3", "--t", "zzz"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--modulus", "x^2+2", "curve", "--q", "3", "--verify"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, kExitPass);
}

TEST(Cli, ExplicitModulus) {
  const Json j = run_json({"--modulus", "x^2+2*x+2", "k3", "--case", "quartic"});
  EXPECT_EQ(j["artifacts"]["determinant"], "-9");
  EXPECT_EQ(run_cli({"--modulus", "x^2+x+2", "curve", "--q", "3", "--verify"}).code, kExitPass);
}

TEST(Cli, SlowAllowsLargeQ) {
  EXPECT_EQ(run_cli({"--slow", "curve", "--q", "49", "--verify"}).code, kExitPass);
}

TEST(Cli, ReportsRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{{"--format", "json", "nodes", "--q", "3"},
                                                                {"--format", "json", "cover", "--q", "5"},
                                                                {"--format", "json", "unirational", "--q", "4"},
                                                                {"--format", "json", "aut", "--q", "16"}}) {
    const CliRun r = run_cli(args);
    const Report parsed = Report::parse_json(r.out);
    EXPECT_EQ(parsed.emit_json(), r.out);
    EXPECT_EQ(Report::parse_json(parsed.emit_json()), parsed);
  }
  EXPECT_THROW(Report::parse_json("{\"command\": 1}"), Error);
  EXPECT_THROW(Report::parse_json("not json"), Error);
}

TEST(Cli, DeterministicAndSeedRecorded) {
  const std::vector<std::string> args{"--format", "json", "--seed", "7", "aut", "--q", "11", "--sample", "50"};
  const CliRun a = run_cli(args), b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["params"]["seed"], 7);
  EXPECT_EQ(j["params"]["mode"], "sampled");
  const CliRun c = run_cli({"--format", "json", "--seed", "8", "aut", "--q", "11", "--sample", "50"});
  EXPECT_EQ(Json::parse(c.out)["params"]["seed"], 8);
}

TEST(Cli, TextReport) {
  const CliRun r = run_cli({"--format", "text", "split", "--q", "3", "--d", "4", "--t", "0"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("[pass]"), std::string::npos);
  EXPECT_EQ(r.out.find("[FAIL]"), std::string::npos);
}
