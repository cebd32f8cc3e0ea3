// Copyright 2026 The sgrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "sgrl/game.hpp"
#include "sgrl/game_io.hpp"

namespace sgrl {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = tools::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path workdir(const std::string& name) {
  const fs::path dir = fs::path(SGRL_TEST_WORKDIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

constexpr const char* kRowSumOne = R"({
  "num_states": 1, "num_actions_min": 1, "num_actions_max": 2,
  "transitions": [[[[0.5], [1.0]]]],
  "rewards": [[[0.25, -0.75]]],
  "initial_dist": [1.0]})";

TEST(Validate, ExitCodes) {
  const fs::path dir = workdir("validate");
  save_game_json(random_game(2, 2, 2, 0.2, 1), (dir / "ok.json").string());
  write(dir / "bad.json", kRowSumOne);
  write(dir / "broken.json", "{\"num_states\": ");

  const CliRun ok = cli({"validate", (dir / "ok.json").string()});
  EXPECT_EQ(ok.code, tools::kExitOk);
  EXPECT_NE(ok.out.find("ok"), std::string::npos);

  const CliRun bad = cli({"validate", (dir / "bad.json").string()});
  EXPECT_EQ(bad.code, tools::kExitDomain);
  EXPECT_NE((bad.out + bad.err).find("(s=0,a=0,b=1)"), std::string::npos);

  EXPECT_EQ(cli({"validate", (dir / "broken.json").string()}).code,
            tools::kExitInput);
  EXPECT_EQ(cli({"validate", (dir / "missing.json").string()}).code,
            tools::kExitInput);
}

TEST(Validate, ProcessExitStatus) {
  const fs::path dir = workdir("process");
  write(dir / "bad.json", kRowSumOne);
  write(dir / "broken.json", "not json");
  const std::string bin = SGRL_BINARY;
  auto status = [&](const std::string& file) {
    const int raw = std::system(
        (bin + " validate " + (dir / file).string() + " > /dev/null 2>&1")
            .c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("bad.json"), 1);
  EXPECT_EQ(status("broken.json"), 2);
}

TEST(Usage, UnknownFlagsAndValues) {
  EXPECT_EQ(cli({"train", "--no-such-flag"}).code, tools::kExitInput);
  EXPECT_EQ(cli({"train", "--preset", "appd1", "--mode", "bogus"}).code,
            tools::kExitInput);
  EXPECT_EQ(cli({"eg", "--preset", "appd1", "--mode", "sampled"}).code,
            tools::kExitInput);
  EXPECT_EQ(cli({"fig", "z"}).code, tools::kExitInput);
}

TEST(ConcentrabilityCommand, ReportsWitness) {
  const CliRun r = cli({"prop31"});
  EXPECT_EQ(r.code, tools::kExitOk);
  EXPECT_NE(r.out.find("concentrability: infinite (witness state 3)"),
            std::string::npos);
}

TEST(RatioCommand, ClosedFormAndRange) {
  const CliRun r = cli({"prop51", "0.1", "0.3"});
  EXPECT_EQ(r.code, tools::kExitOk);
  EXPECT_NE(r.out.find("-7.11111111"), std::string::npos);
  EXPECT_EQ(cli({"prop51", "0.5", "0.5"}).code, tools::kExitDomain);
}

TEST(Fig, GridArtifacts) {
  const fs::path dir = workdir("fig_a");
  const CliRun r = cli({"fig", "a", "--out", dir.string(), "--res", "41"});
  EXPECT_EQ(r.code, tools::kExitOk);
  const std::string csv = slurp(dir / "fig_a.csv");
  const std::string svg = slurp(dir / "fig_a.svg");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 41);
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Fig, LinePlotArtifacts) {
  const fs::path dir = workdir("fig_b");
  const CliRun r = cli({"fig", "b", "--out", dir.string(), "--iters", "2000",
                     "--log-every", "100"});
  const std::string csv = slurp(dir / "fig_b.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "iter,primal_gap,dual_gap,pd_gap,grad_norm_x,grad_norm_y,"
            "avg_primal_gap");
  EXPECT_NE(slurp(dir / "fig_b.svg").find("viewBox=\""), std::string::npos);
  EXPECT_EQ(r.code, tools::kExitOk);
  EXPECT_NE(r.out.find("pd_gap < 1e-4 within run: PASS"), std::string::npos);
}

TEST(Train, CsvHeaderAndDeterminism) {
  const std::vector<std::string> args = {
      "train", "--random", "2,2,2,0.3", "--game-seed", "5", "--mode",
      "sampled", "--seed", "42", "--iters", "300", "--log-every", "50",
      "--eps-x", "0.1", "--eps-y", "0.1"};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  EXPECT_EQ(a.code, tools::kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')),
            "iter,primal_gap,dual_gap,pd_gap,grad_norm_x,grad_norm_y,"
            "avg_primal_gap");
  std::vector<std::string> other = args;
  other[8] = "43";
  EXPECT_NE(cli(other).out, a.out);
}

TEST(Train, GameFileSource) {
  const fs::path dir = workdir("train_file");
  save_game_json(random_game(2, 2, 2, 0.3, 6), (dir / "g.json").string());
  const CliRun r = cli({"train", "--game", (dir / "g.json").string(), "--iters",
                     "100", "--log-every", "50", "--out", dir.string()});
  EXPECT_EQ(r.code, tools::kExitOk);
  EXPECT_TRUE(fs::exists(dir / "train.csv"));
}

TEST(RandomSuite, Deterministic) {
  const fs::path d1 = workdir("suite1");
  const fs::path d2 = workdir("suite2");
  const std::vector<std::string> base = {"random-suite", "--count", "3",
                                         "--iters", "2000", "--sgda-iters",
                                         "500", "--seed", "9", "--out"};
  std::vector<std::string> a1 = base, a2 = base;
  a1.push_back(d1.string());
  a2.push_back(d2.string());
  cli(a1);
  cli(a2);
  const std::string s1 = slurp(d1 / "random_suite.csv");
  EXPECT_FALSE(s1.empty());
  EXPECT_EQ(s1, slurp(d2 / "random_suite.csv"));
}

}  // namespace
}  // namespace sgrl
