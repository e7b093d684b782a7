// Copyright 2026 The sbmrd Authors.
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

#include "sbmrd/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "json.hpp"
#include "sbmrd/rdf.h"

namespace sbmrd {
namespace {

using nlohmann::json;

constexpr char kBlock3[] =
    R"({"model":"sbm","n":100,"p":[0.4,0.3,0.3],)"
    R"("W":[[0.5,0.2,0.1],[0.2,0.5,0.1],[0.1,0.1,0.4]]})";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = RunCli(args, in, out, err);
  return {code, out.str(), err.str()};
}

// Runs with the config piped through stdin.
CliRun CliWith(const std::string& config, std::vector<std::string> args) {
  args.insert(args.begin() + 1, {"--config", "-"});
  return Cli(args, config);
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(CliTest, Entropy) {
  const CliRun r = CliWith(kBlock3, {"entropy"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["conditional_entropy_bits"].get<double>(),
              testing::ref::kBlock3CondEntropy, 1e-9);
  EXPECT_EQ(j["entropy_interval_bits"].size(), 2u);
}

TEST(CliTest, CurveCsvRoundTrips) {
  const CliRun r = CliWith(kBlock3, {"curve", "--points", "50"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 51u);
  EXPECT_EQ(lines[0], "D,D_per_edge,rate_bits,mu");
  const ModelParams model = testing::Block3();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double d, dpe, rate, mu;
    ASSERT_EQ(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf", &d, &dpe,
                          &rate, &mu), 4);
    const RdCurvePoint pt = EvaluateRdf(model, d);
    EXPECT_LE(testing::RelErr(rate, pt.rate_bits), 1e-9) << lines[i];
    EXPECT_LE(testing::RelErr(mu, pt.water_level), 1e-9) << lines[i];
  }
}

TEST(CliTest, CurveExplicitGrid) {
  json config = json::parse(kBlock3);
  config["grid"] = {0, 495, 1242.45};
  const CliRun r = CliWith(config.dump(), {"curve"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[2].substr(0, 8), "495,0.1,");
  config["grid"] = {0, -5};
  EXPECT_EQ(CliWith(config.dump(), {"curve"}).code, kExitConfig);
  config["grid"] = {{"points", 7}};
  EXPECT_EQ(Lines(CliWith(config.dump(), {"curve"}).out).size(), 8u);
}

TEST(CliTest, WaterfillAndInfeasible) {
  const CliRun ok = CliWith(kBlock3, {"waterfill", "--D", "495"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  const json j = json::parse(ok.out);
  EXPECT_NEAR(j["mu"].get<double>(), 0.1, 1e-15);
  EXPECT_TRUE(j["kkt"]["holds_1e-10"].get<bool>());

  const CliRun bad = CliWith(kBlock3, {"waterfill", "--D", "1300"});
  EXPECT_EQ(bad.code, kExitComputation);
  EXPECT_NE(bad.err.find("1242.45"), std::string::npos) << bad.err;
  EXPECT_TRUE(bad.out.empty());

  EXPECT_EQ(CliWith(kBlock3, {"waterfill"}).code, kExitConfig);
  EXPECT_EQ(CliWith(kBlock3, {"waterfill", "--D", "-3"}).code, kExitConfig);
}

TEST(CliTest, ConfigErrors) {
  EXPECT_EQ(Cli({"entropy"}).code, kExitConfig);
  EXPECT_EQ(Cli({}).code, kExitConfig);
  EXPECT_EQ(Cli({"bogus"}).code, kExitConfig);
  EXPECT_EQ(CliWith("{not json", {"entropy"}).code, kExitConfig);
  EXPECT_EQ(CliWith(R"({"model":"er","n":4,"p":0.2,"q":1})", {"entropy"}).code,
            kExitConfig);
  EXPECT_EQ(CliWith(R"({"model":"er","n":4,"p":1.2})", {"entropy"}).code,
            kExitConfig);
  EXPECT_EQ(Cli({"entropy", "--config", "/nonexistent/x.json"}).code,
            kExitConfig);
}

TEST(CliTest, HelpExitsZero) {
  const CliRun r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(CliTest, VerifySmallModels) {
  const std::string small =
      R"({"model":"sbm","n":3,"p":[0.5,0.5],"W":[[0.3,0.1],[0.1,0.4]]})";
  const CliRun r = CliWith(small, {"verify"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["results"].size(), 5u);
  EXPECT_LE(j["max_abs_diff"].get<double>(), 1e-4);
  EXPECT_TRUE(j["pass"].get<bool>());

  const CliRun er = CliWith(R"({"model":"er","n":3,"p":0.3})",
                         {"verify", "--D", "0.2", "--D", "0.5"});
  ASSERT_EQ(er.code, kExitOk) << er.err;
  EXPECT_EQ(json::parse(er.out)["results"].size(), 2u);
}

TEST(CliTest, VerifyExitCodes) {
  const std::string small = R"({"model":"er","n":3,"p":0.3})";
  EXPECT_EQ(CliWith(small, {"verify", "--tol", "0"}).code, kExitComputation);
  EXPECT_EQ(CliWith(small, {"verify", "--tol", "-1"}).code, kExitConfig);
  EXPECT_EQ(CliWith(kBlock3, {"verify"}).code, kExitConfig);
  EXPECT_EQ(CliWith(small, {"verify", "--D", "5"}).code, kExitComputation);
}

TEST(CliTest, SimulateIsByteIdentical) {
  const std::vector<std::string> args = {"simulate", "--D", "495",
                                         "--trials", "20", "--seed", "9"};
  const CliRun a = CliWith(kBlock3, args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, CliWith(kBlock3, args).out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "4"});
  EXPECT_EQ(a.out, CliWith(kBlock3, threaded).out);
  auto other_seed = args;
  other_seed[6] = "10";
  EXPECT_NE(a.out, CliWith(kBlock3, other_seed).out);
}

TEST(CliTest, SimulateSingleTrialAndZeroTrials) {
  const CliRun one = CliWith(kBlock3, {"simulate", "--D", "495", "--trials", "1"});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_TRUE(json::parse(one.out)["std_error"].is_null());
  EXPECT_EQ(CliWith(kBlock3, {"simulate", "--D", "495", "--trials", "0"}).code,
            kExitConfig);
}

TEST(CliTest, OutputAndDumpFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "sbmrd_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "report.json").string();
  const std::string graph = (dir / "g.txt").string();
  const std::string labels = (dir / "labels.txt").string();
  const CliRun r = CliWith(kBlock3, {"simulate", "--D", "200", "--trials", "3",
                                "--out", out, "--graph-out", graph,
                                "--labels-out", labels});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream report(out);
  EXPECT_EQ(json::parse(report)["trials"].get<int>(), 3);
  std::ifstream g(graph);
  std::string first;
  std::getline(g, first);
  EXPECT_EQ(first, "100");
  std::ifstream l(labels);
  EXPECT_EQ(Lines(std::string(std::istreambuf_iterator<char>(l), {})).size(),
            100u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sbmrd
