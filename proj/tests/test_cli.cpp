// Copyright 2026 The hadamard-sim Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli_app.hpp"

namespace hadamard::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("hadamard-cli-" + std::string(info->name()) + "-" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

  std::string read(const fs::path& p) const {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int call(std::vector<std::string> args) {
    args.insert(args.begin(), "hadamard-sim");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

constexpr const char* kSmallConfig = R"({
  "schema": 1,
  "alpha": {"count": 16},
  "pair_rate": 20000,
  "singles_rate": 4400,
  "efficiencies": [1, 0.95, 0.9, 0.97],
  "accidental_rate": 3,
  "indistinguishability": 0.94,
  "seed": 2026
})";

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(call({"--help"}), 0);
  EXPECT_NE(out_.str().find("fringe-sweep"), std::string::npos);
  EXPECT_EQ(call({"rails", "--help"}), 0);
}

TEST_F(CliTest, UnknownCommandIsUsageError) {
  EXPECT_EQ(call({"frobnicate"}), kUsage);
  EXPECT_EQ(call({}), kUsage);
}

TEST_F(CliTest, FringeSweepWritesOutputsAndManifest) {
  write("c.json", kSmallConfig);
  ASSERT_EQ(call({"fringe-sweep", "--config", path("c.json").string(), "--out", path("o").string()}), 0)
      << err_.str();
  for (const char* f : {"fringes.csv", "fit.csv", "manifest.json"}) EXPECT_TRUE(fs::exists(path("o") / f)) << f;
  const std::string fringes = read(path("o") / "fringes.csv");
  EXPECT_EQ(fringes.substr(0, fringes.find('\n')), "alpha_rad,theta_prime_rad,pair,counts,accidentals");
  EXPECT_EQ(std::count(fringes.begin(), fringes.end(), '\n'), 1 + 16 * 6);
  const auto manifest = nlohmann::json::parse(read(path("o") / "manifest.json"));
  EXPECT_EQ(manifest["command"], "fringe-sweep");
  EXPECT_EQ(manifest["seed"], 2026);
  EXPECT_EQ(manifest["version"], HADAMARD_VERSION);
  EXPECT_EQ(manifest["outputs"].size(), 3u);
}

TEST_F(CliTest, SweepsAreByteIdenticalAcrossRuns) {
  write("c.json", kSmallConfig);
  for (const char* cmd : {"fringe-sweep", "singles-sweep"}) {
    ASSERT_EQ(call({cmd, "--config", path("c.json").string(), "--out", path("a").string()}), 0);
    ASSERT_EQ(call({cmd, "--config", path("c.json").string(), "--out", path("b").string()}), 0);
  }
  for (const char* f : {"fringes.csv", "fit.csv", "singles.csv", "rse.csv", "manifest.json"}) {
    EXPECT_EQ(read(path("a") / f), read(path("b") / f)) << f;
  }
}

TEST_F(CliTest, ManifestReproducesRun) {
  write("c.json", kSmallConfig);
  ASSERT_EQ(call({"fringe-sweep", "--config", path("c.json").string(), "--out", path("a").string()}), 0);
  ASSERT_EQ(call({"fringe-sweep", "--config", (path("a") / "manifest.json").string(), "--out", path("b").string()}),
            0);
  EXPECT_EQ(read(path("a") / "fringes.csv"), read(path("b") / "fringes.csv"));
  EXPECT_EQ(read(path("a") / "manifest.json"), read(path("b") / "manifest.json"));
}

TEST_F(CliTest, SeedFlagOverridesConfig) {
  write("c.json", kSmallConfig);
  ASSERT_EQ(call({"fringe-sweep", "--config", path("c.json").string(), "--out", path("a").string()}), 0);
  ASSERT_EQ(call({"--seed", "7", "fringe-sweep", "--config", path("c.json").string(), "--out", path("b").string()}), 0);
  ASSERT_EQ(call({"fringe-sweep", "--seed", "7", "--config", path("c.json").string(), "--out", path("c").string()}), 0);
  EXPECT_NE(read(path("a") / "fringes.csv"), read(path("b") / "fringes.csv"));
  EXPECT_EQ(read(path("b") / "fringes.csv"), read(path("c") / "fringes.csv"));
  EXPECT_EQ(nlohmann::json::parse(read(path("b") / "manifest.json"))["seed"], 7);
}

TEST_F(CliTest, MatchesCheckedInGoldenFiles) {
  const fs::path golden = fs::path(HADAMARD_TEST_DATA_DIR) / "golden";
  ASSERT_EQ(call({"fringe-sweep", "--config", (golden / "config.json").string(), "--out", path("g").string()}), 0);
  ASSERT_EQ(call({"singles-sweep", "--config", (golden / "config.json").string(), "--out", path("g").string()}), 0);
  EXPECT_EQ(read(path("g") / "fringes.csv"), read(golden / "fringes.csv"));
  EXPECT_EQ(read(path("g") / "fit.csv"), read(golden / "fit.csv"));
  EXPECT_EQ(read(path("g") / "singles.csv"), read(golden / "singles.csv"));
}

TEST_F(CliTest, IdealFringeSweepVisibilities) {
  write("c.json", R"({"schema": 1, "pair_rate": 1e6, "seed": 3})");
  ASSERT_EQ(call({"fringe-sweep", "--config", path("c.json").string(), "--out", path("o").string()}), 0);
  std::istringstream fit(read(path("o") / "fit.csv"));
  std::string line;
  std::getline(fit, line);
  while (std::getline(fit, line)) {
    const std::string pair = line.substr(0, 2);
    const double vis = std::stod(line.substr(line.rfind(',') + 1));
    if (pair == "02" || pair == "13") {
      EXPECT_LE(vis, 0.01) << pair;
    } else {
      EXPECT_GE(vis, 0.999) << pair;
    }
  }
}

TEST_F(CliTest, MalformedConfigExitsTwoWithoutOutputs) {
  write("bad.json", "{\n  \"schema\": 1,\n  \"pair_rate\": oops\n}\n");
  EXPECT_EQ(call({"fringe-sweep", "--config", path("bad.json").string(), "--out", path("o").string()}), kConfig);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("o")));

  write("field.json", R"({"schema": 1, "efficiencies": [1, 1, 2, 1]})");
  EXPECT_EQ(call({"fringe-sweep", "--config", path("field.json").string(), "--out", path("o").string()}), kConfig);
  EXPECT_NE(err_.str().find("efficiencies[2]"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("o")));

  EXPECT_EQ(call({"fringe-sweep", "--config", path("missing.json").string(), "--out", path("o").string()}), kConfig);
}

TEST_F(CliTest, ZeroSinglesRateExitsThree) {
  write("z.json", R"({"schema": 1, "singles_rate": 0})");
  EXPECT_EQ(call({"singles-sweep", "--config", path("z.json").string(), "--out", path("o").string()}), kNumerical);
  EXPECT_NE(err_.str().find("relative_standard_error"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o")));
}

TEST_F(CliTest, SinglesSweepReportsShotNoiseRse) {
  write("c.json", R"({"schema": 1, "singles_rate": 4400, "pair_rate": 0, "seed": 11})");
  ASSERT_EQ(call({"singles-sweep", "--config", path("c.json").string(), "--out", path("o").string()}), 0);
  const std::string text = out_.str();
  const auto pos = text.find("mean RSE ");
  ASSERT_NE(pos, std::string::npos);
  const double rse = std::stod(text.substr(pos + 9));
  EXPECT_GT(rse, 0.02);
  EXPECT_LT(rse, 0.04);
  const std::string singles = read(path("o") / "singles.csv");
  EXPECT_EQ(std::count(singles.begin(), singles.end(), '\n'), 1 + 256 * 8);
}

TEST_F(CliTest, RailsAtPiOverEight) {
  ASSERT_EQ(call({"rails", "--alpha", "0.39269908169872414", "--out", path("o").string()}), 0);
  const std::string text = out_.str();
  EXPECT_NE(text.find("(0,1) -1.57079633  (1,0) 1.57079633"), std::string::npos) << text;
  EXPECT_NE(text.find("lune R-P-L-H: solid_angle 3.14159265  pancharatnam -1.57079633"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("o") / "manifest.json"));
}

TEST_F(CliTest, RailsAtZero) {
  ASSERT_EQ(call({"rails", "--alpha", "0", "--out", path("o").string()}), 0);
  EXPECT_NE(out_.str().find("(0,1) 0  (1,0) 0"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find("lune R-P-L-H: solid_angle 0  pancharatnam 0"), std::string::npos);
}

TEST_F(CliTest, RailsSweepTableSteps) {
  ASSERT_EQ(call({"rails", "--sweep", "16", "--out", path("o").string()}), 0);
  std::istringstream table(out_.str());
  std::string line;
  std::getline(table, line);
  int rows = 0;
  while (std::getline(table, line)) {
    std::vector<double> cols;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cols.push_back(std::stod(cell));
    ASSERT_EQ(cols.size(), 6u);
    if (rows > 0) EXPECT_NEAR(cols[2], cols[3], 1e-10);
    ++rows;
  }
  EXPECT_EQ(rows, 16);
}

TEST_F(CliTest, DecomposeH4RoundTrip) {
  ASSERT_EQ(call({"decompose", "--h4", "1.0", "--save-matrix", "h4.txt", "--out", path("o").string()}), 0);
  ASSERT_EQ(call({"decompose", (path("o") / "h4.txt").string(), "--out", path("p").string()}), 0);
  const std::string text = out_.str();
  const auto pos = text.find("round_trip_error ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LT(std::stod(text.substr(pos + 17)), 1e-9);
  EXPECT_NE(text.find("beamsplitters "), std::string::npos);
}

TEST_F(CliTest, DecomposeIdentityIsEmpty) {
  write("id.txt", "3\n1,0 0,0 0,0\n0,0 1,0 0,0\n0,0 0,0 1,0\n");
  ASSERT_EQ(call({"decompose", path("id.txt").string(), "--out", path("o").string()}), 0);
  EXPECT_NE(out_.str().find("plan: empty"), std::string::npos);
}

TEST_F(CliTest, DecomposeCircuitJson) {
  write("net.json", circuit_to_json(hadamard_network(0.4)).dump());
  ASSERT_EQ(call({"decompose", path("net.json").string(), "--out", path("o").string()}), 0);
  EXPECT_NE(out_.str().find("modes 4"), std::string::npos);
}

TEST_F(CliTest, DecomposeRejectsNonUnitary) {
  write("nu.txt", "2\n1,0 1,0\n0,0 1,0\n");
  EXPECT_EQ(call({"decompose", path("nu.txt").string(), "--out", path("o").string()}), kConfig);
  EXPECT_NE(err_.str().find("not unitary"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("o")));
  write("bad.txt", "2\n1,0\n");
  EXPECT_EQ(call({"decompose", path("bad.txt").string(), "--out", path("o").string()}), kConfig);
  EXPECT_EQ(call({"decompose", "--out", path("o").string()}), kConfig);
}

}  // namespace
}  // namespace hadamard::cli
