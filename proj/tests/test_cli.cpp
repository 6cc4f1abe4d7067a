// Copyright 2026 The haar-sentinel Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = HAAR_SENTINEL_CLI;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("haar_sentinel_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  // Runs the CLI with stdout to `stdout_file` and stderr to "stderr.txt".
  int run(const std::string& args, const std::string& stdout_file = "stdout.txt",
          const std::string& env = "") const {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + kCli + "' " + args +
                            " > '" + path(stdout_file).string() + "' 2> '" +
                            path("stderr.txt").string() + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

json without_meta(const std::string& text) {
  json j = json::parse(text);
  j.erase("meta");
  return j;
}

}  // namespace

TEST_F(Cli, MomentsExactQubit) {
  ASSERT_EQ(run("moments --spectrum number:1 --t 1..3 --format json"), 0);
  const json j = json::parse(read("stdout.txt"));
  const auto& rows = j.at("moments");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].at("value").get<double>(), 0.5, 1e-14);
  EXPECT_NEAR(rows[1].at("value").get<double>(), 0.375, 1e-14);
  EXPECT_NEAR(rows[2].at("value").get<double>(), 0.3125, 1e-14);
}

TEST_F(Cli, MomentsBoundsContainExactFirstMoment) {
  write("s.json", R"({"eigenvalues":[0.5,2,7],"multiplicities":[3,2,4]})");
  ASSERT_EQ(run("moments --spectrum s.json --t 1 --mode bounds --format json", "b.json"), 0);
  ASSERT_EQ(run("moments --spectrum s.json --t 1 --format json", "e.json"), 0);
  const double exact = json::parse(read("e.json")).at("moments")[0].at("value");
  const json b = json::parse(read("b.json")).at("moments")[0];
  EXPECT_NEAR(exact, (1.5 + 4.0 + 28.0) / 9.0, 1e-12);
  EXPECT_LE(b.at("lower").get<double>(), exact * (1 + 1e-12));
  EXPECT_GE(b.at("upper").get<double>(), exact);
}

TEST_F(Cli, MalformedJsonExitsTwo) {
  write("bad.json", R"({"eigenvalues": [0, 1)");
  EXPECT_EQ(run("moments --spectrum bad.json"), 2);
  EXPECT_NE(read("stderr.txt").find("not valid JSON"), std::string::npos);
  EXPECT_EQ(run("moments --spectrum nowhere.json"), 2);
  EXPECT_EQ(run("moments --spectrum number:1 --mode approximate"), 2);
  EXPECT_EQ(run("verify --no-such-flag"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST_F(Cli, TermBudgetExceededExitsThree) {
  EXPECT_EQ(run("moments --spectrum number:3 --t 4", "stdout.txt", "HAAR_SENTINEL_TERM_BUDGET=5"), 3);
  EXPECT_EQ(run("moments --spectrum number:3 --t 4 --mode bounds", "stdout.txt",
                "HAAR_SENTINEL_TERM_BUDGET=5"),
            0);
  EXPECT_EQ(run("moments --spectrum number:3 --t 4", "stdout.txt",
                "HAAR_SENTINEL_TERM_BUDGET=lots"),
            2);
}

TEST_F(Cli, GenerateFixedStateGivesZeros) {
  write("e.json", R"({"kind":"fixed_basis_state","N":8,"params":{"index":0},"seed":1})");
  ASSERT_EQ(run("generate --ensemble e.json --spectrum number:3 -M 10 --out s.csv"), 0);
  EXPECT_EQ(read("s.csv"), "sample\n0\n0\n0\n0\n0\n0\n0\n0\n0\n0\n");
}

TEST_F(Cli, GenerateIsDeterministicAndUnbiased) {
  write("e.json", R"({"kind":"haar","N":2,"seed":2024})");
  ASSERT_EQ(run("generate --ensemble e.json --spectrum number:1 -M 100000 --out a.csv"), 0);
  ASSERT_EQ(run("generate --ensemble e.json --spectrum number:1 -M 100000 --out b.csv --threads 3"), 0);
  const std::string a = read("a.csv");
  EXPECT_EQ(a, read("b.csv"));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  double sum = 0.0;
  double sq = 0.0;
  int n = 0;
  while (std::getline(in, line)) {
    const double v = std::stod(line);
    sum += v;
    sq += v * v;
    ++n;
  }
  ASSERT_EQ(n, 100000);
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, 0.5, 3.0 * se);

  ASSERT_EQ(run("generate --ensemble e.json --spectrum number:1 -M 5 --out c.jsonl"), 0);
  EXPECT_EQ(read("c.jsonl").find("sample"), std::string::npos);
  EXPECT_EQ(run("generate --ensemble e.json --spectrum number:2 -M 5"), 2);
}

TEST_F(Cli, EnsembleKindNameIsSizedFromSpectrum) {
  write("e.json", R"({"kind":"haar","N":8,"seed":3})");
  ASSERT_EQ(run("generate --ensemble e.json --spectrum number:3 -M 50 --out a.csv"), 0);
  ASSERT_EQ(run("generate --ensemble haar --seed 3 --spectrum number:3 -M 50 --out b.csv"), 0);
  EXPECT_EQ(read("a.csv"), read("b.csv"));
  EXPECT_EQ(run("verify --ensemble counterexample --spectrum number:4 --tiers permutation "
                "--t 1 -M 5000 --epsilon 0.01 --out r.json"),
            10);
  EXPECT_EQ(run("generate --ensemble no_such_kind --spectrum number:2 -M 2"), 2);
}

TEST_F(Cli, VerifyHaarAllTiersFirstOrderExitsZero) {
  write("c.json", R"({"spectrum":{"eigenvalues":[0,1,2],"multiplicities":[1,1,1]},
      "ensemble":{"kind":"haar","N":3},"tiers":["observable","permutation","mub"],
      "t":1,"epsilon":0.05,"M":10000,"M_perm":10,"M_u":3,"seed":11})");
  EXPECT_EQ(run("verify c.json --out r.json"), 0);
  const json r = json::parse(read("r.json"));
  EXPECT_EQ(r.at("reports").size(), 3u);
  EXPECT_TRUE(r.contains("meta"));
  EXPECT_NE(read("stderr.txt").find("compatible"), std::string::npos);
}

TEST_F(Cli, VerifyHaarObservableAndPermutationSecondOrderExitsZero) {
  write("c.json", R"({"spectrum":{"eigenvalues":[0,1,2],"multiplicities":[1,1,1]},
      "ensemble":{"kind":"haar","N":3},"tiers":["observable","permutation"],
      "t":"1..2","epsilon":0.05,"M":10000,"M_perm":10,"seed":11})");
  EXPECT_EQ(run("verify --config c.json --out r.json"), 0);
}

TEST_F(Cli, VerifyCounterexampleExitsTen) {
  write("c.json", R"({"spectrum":"number:6","ensemble":{"kind":"counterexample","n":6},
      "tiers":["observable","permutation"],"t":1,"epsilon":0.01,"M":10000,"M_perm":20,"seed":5})");
  EXPECT_EQ(run("verify c.json --out r.json"), 10);
  const json r = json::parse(read("r.json"));
  EXPECT_EQ(r.at("reports")[0].at("verdict"), "compatible");
  EXPECT_EQ(r.at("reports")[1].at("verdict"), "incompatible");
}

TEST_F(Cli, VerifyInconclusiveExitsEleven) {
  // Samples centred on mu_1 = 1.5 pass; a 0.04 offset lands between delta and epsilon.
  std::string big = "sample\n";
  for (int i = 0; i < 200000; ++i) big += (i % 2 ? "1.4\n" : "1.6\n");
  write("big.csv", big);
  EXPECT_EQ(run("verify --spectrum number:3 --samples-file big.csv --t 1 --epsilon 0.05 --out r.json"),
            0);
  write("off.csv", "sample\n" + [] {
    std::string s;
    for (int i = 0; i < 200000; ++i) s += (i % 2 ? "1.45\n" : "1.47\n");
    return s;
  }());
  // |R| = 0.04 > delta ~ 0.0106 and <= epsilon = 0.05.
  EXPECT_EQ(run("verify --spectrum number:3 --samples-file off.csv --t 1 --epsilon 0.05 --out r.json"),
            11);
}

TEST_F(Cli, VerifyUnsupportedMubDimensionExitsFour) {
  write("c.json", R"({"spectrum":{"eigenvalues":[0,1],"multiplicities":[3,3]},
      "ensemble":{"kind":"haar","N":6},"tiers":["mub"],"t":1,"seed":1})");
  EXPECT_EQ(run("verify c.json"), 4);
  EXPECT_EQ(run("mub -N 6"), 4);
}

TEST_F(Cli, VerifyConfigErrorsExitTwo) {
  write("c.json", R"({"spectrum":"number:2","ensemble":{"kind":"haar","N":8}})");
  EXPECT_EQ(run("verify c.json"), 2);
  EXPECT_EQ(run("verify missing.json"), 2);
  write("d.json", R"({"spectrum":"number:2","ensemble":{"kind":"haar","N":4},"tiers":["x"]})");
  EXPECT_EQ(run("verify d.json"), 2);
}

TEST_F(Cli, VerifyIsByteIdenticalAcrossRunsAndThreadCounts) {
  write("c.json", R"({"spectrum":"number:3","ensemble":{"kind":"haar","N":8},
      "tiers":["observable","permutation"],"t":"1..3","epsilon":0.05,"M":3000,"M_perm":4})");
  ASSERT_EQ(run("verify c.json --seed 77 --threads 1 --out a.json"), 0);
  ASSERT_EQ(run("verify c.json --seed 77 --threads 8 --out b.json"), 0);
  ASSERT_EQ(run("verify c.json --seed 77 --threads 8 --out c2.json"), 0);
  EXPECT_EQ(without_meta(read("a.json")).dump(), without_meta(read("b.json")).dump());
  EXPECT_EQ(without_meta(read("b.json")).dump(), without_meta(read("c2.json")).dump());
  ASSERT_EQ(run("verify c.json --seed 78 --threads 1 --out d.json"), 0);
  EXPECT_NE(without_meta(read("a.json")).dump(), without_meta(read("d.json")).dump());
}

TEST_F(Cli, ReportRoundTripsThroughSchemaFields) {
  write("c.json", R"({"spectrum":"number:2","ensemble":{"kind":"haar","N":4},
      "tiers":["permutation"],"t":2,"epsilon":0.05,"M":1000,"M_perm":3,"seed":4})");
  run("verify c.json --out r.json");
  const json r = json::parse(read("r.json"));
  const json& report = r.at("reports")[0];
  for (const char* key : {"tier", "t", "R", "delta", "epsilon", "mu_haar", "verdict", "provenance"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  for (const char* key : {"seed", "M", "M_perm", "M_u", "stream_deviations", "permutation_seeds"}) {
    EXPECT_TRUE(report.at("provenance").contains(key)) << key;
  }
}

TEST_F(Cli, MubDump) {
  ASSERT_EQ(run("mub --dimension 5 --out m.json"), 0);
  const json m = json::parse(read("m.json"));
  EXPECT_EQ(m.at("bases").size(), 6u);
  EXPECT_LE(m.at("max_deviation").get<double>(), 1e-10);
}
