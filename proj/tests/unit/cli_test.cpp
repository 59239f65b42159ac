// Copyright 2026 The qproc Authors
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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qproc/cli/commands.hpp"
#include "qproc/dataset_io.hpp"
#include "qproc/errors.hpp"

namespace fs = std::filesystem;

namespace qproc::cli {
namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qproc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("qproc_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }
  std::string str(const std::string& name) const { return path(name).string(); }

  fs::path dir_;
};

TEST(Window, Parsing) {
  const Window w = parse_window("1555:1560");
  EXPECT_EQ(w.lo_nm, 1555.0);
  EXPECT_EQ(w.hi_nm, 1560.0);
  EXPECT_TRUE(w.contains(1560.0));
  EXPECT_FALSE(w.contains(1560.5));
  EXPECT_FALSE(w.contains(std::nullopt));
  EXPECT_TRUE(parse_window("all").contains(std::nullopt));
  EXPECT_THROW(parse_window("1560:1555"), BadSpec);
  EXPECT_THROW(parse_window("abc"), BadSpec);
  EXPECT_THROW(parse_window("1555"), BadSpec);
}

TEST(Seeds, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}

TEST_F(CliTest, HelpAndBadInputExitCodes) {
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
  EXPECT_EQ(run_cli({"simulate", "warp:p=0.1", "-o", str("x")}), kExitBadInput);
  EXPECT_EQ(run_cli({"simulate", "depolarizing:p=2", "-o", str("x")}), kExitBadInput);
  EXPECT_EQ(run_cli({"no-such-command"}), kExitBadInput);
  EXPECT_EQ(run_cli({"fit-process", str("missing.csv"), "-o", str("x")}), kExitBadInput);
}

TEST_F(CliTest, SimulateIdentityWritesFullGrid) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=0", "-o", str("sim")}), kExitOk);
  const auto rows = lines(path("sim/process.csv"));
  ASSERT_EQ(rows.size(), 37u);
  EXPECT_EQ(rows.front(), io::kProcessCsvHeader);
  const ScanDataset scan = io::read_process_csv(path("sim/process.csv"));
  ASSERT_EQ(scan.items.size(), 1u);
  EXPECT_EQ(scan.items[0].counts(0, 0), 100000);
  EXPECT_EQ(scan.items[0].counts(0, 1), 0);
  EXPECT_EQ(scan.items[0].counts(0, 2), 50000);
  EXPECT_TRUE(fs::exists(path("sim/manifest.json")));
}

TEST_F(CliTest, SimulatePoissonIsSeeded) {
  const std::vector<std::string> base{"simulate", "dephasing:p=0.2", "--mode", "poisson",
                                      "--wavelengths", "1555,1556", "--seed", "9"};
  auto a = base, b = base, c = base;
  a.insert(a.end(), {"-o", str("a")});
  b.insert(b.end(), {"-o", str("b")});
  c[7] = "10";
  c.insert(c.end(), {"-o", str("c")});
  ASSERT_EQ(run_cli(a), kExitOk);
  ASSERT_EQ(run_cli(b), kExitOk);
  ASSERT_EQ(run_cli(c), kExitOk);
  EXPECT_EQ(slurp(path("a/process.csv")), slurp(path("b/process.csv")));
  EXPECT_NE(slurp(path("a/process.csv")), slurp(path("c/process.csv")));
  EXPECT_EQ(io::read_process_csv(path("a/process.csv")).items.size(), 2u);
}

TEST_F(CliTest, SimulateNoiseWritesStateData) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=1", "--noise", "--counts", "1000", "-o", str("n")}),
            kExitOk);
  const ScanDataset scan = io::read_noise_csv(path("n/noise.csv"));
  ASSERT_EQ(scan.items.size(), 1u);
  EXPECT_EQ(scan.items[0].counts.minCoeff(), 500);
}

TEST_F(CliTest, FitProcessOnEmptyDataIsBadInput) {
  {
    std::ofstream out(path("empty.csv"));
    out << io::kProcessCsvHeader << '\n';
  }
  EXPECT_EQ(run_cli({"fit-process", str("empty.csv"), "-R", "4", "-T", "2", "-o", str("fit")}),
            kExitBadInput);
}

TEST_F(CliTest, FitProcessRelativeFidelityStartsAtOne) {
  ASSERT_EQ(run_cli({"simulate", "dephasing:p=0.1", "--wavelengths", "1555,1556", "-o", str("sim")}),
            kExitOk);
  ASSERT_EQ(run_cli({"fit-process", str("sim/process.csv"), "-R", "32", "-T", "32", "--burn-in", "4000", "--truth",
                     "dephasing:p=0.1", "--no-capacity", "-j", "2", "-o", str("fit")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(path("fit/posterior_1555.json")));
  EXPECT_TRUE(fs::exists(path("fit/posterior_1556.json")));
  EXPECT_TRUE(fs::exists(path("fit/summary.json")));
  const auto samples = lines(path("fit/samples.csv"));
  ASSERT_EQ(samples.size(), 1u + 64u);
  EXPECT_EQ(samples.front(),
            "wavelength_nm,sample,unitarity,capacity_qubits,relative_fidelity,fidelity_to_truth");
  std::map<std::string, double> rel;
  for (const auto& row : lines(path("fit/metrics.csv"))) {
    std::stringstream s(row);
    std::string wl, metric, mean;
    std::getline(s, wl, ',');
    std::getline(s, metric, ',');
    std::getline(s, mean, ',');
    if (metric == "relative_fidelity") rel[wl] = std::stod(mean);
    if (metric == "fidelity_to_truth") EXPECT_GT(std::stod(mean), 0.995);
  }
  ASSERT_EQ(rel.size(), 2u);
  EXPECT_EQ(rel.begin()->second, 1.0);
  EXPECT_GT(std::next(rel.begin())->second, 0.99);
}

TEST_F(CliTest, ReplayReproducesBytesAcrossWorkerCounts) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=0.2", "--mode", "poisson", "--wavelengths",
                     "1555,1556,1557", "-o", str("sim")}),
            kExitOk);
  ASSERT_EQ(run_cli({"fit-process", str("sim/process.csv"), "-R", "8", "-T", "8", "-j", "1", "-o",
                     str("fit")}),
            kExitOk);
  ASSERT_EQ(run_cli({"replay", str("fit/manifest.json"), "-j", "3", "-o", str("again")}), kExitOk);
  for (const char* name : {"samples.csv", "metrics.csv", "summary.json", "posterior_1556.json"}) {
    EXPECT_EQ(slurp(path("fit") / name), slurp(path("again") / name)) << name;
  }
}

TEST_F(CliTest, CompareModelsEmptyWindowIsBadInput) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=0", "--wavelengths", "1555", "-o", str("sim")}),
            kExitOk);
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=1", "--noise", "--wavelengths", "1555", "-o",
                     str("noise")}),
            kExitOk);
  ASSERT_EQ(run_cli({"fit-process", str("sim/process.csv"), "-R", "4", "-T", "64", "--burn-in", "4000", "--no-capacity",
                     "-o", str("fit")}),
            kExitOk);
  EXPECT_EQ(run_cli({"compare-models", str("fit"), "--signal", str("sim/process.csv"), "--noise",
                     str("noise/noise.csv"), "--window", "1000:1001", "-o", str("cmp")}),
            kExitBadInput);
}

TEST_F(CliTest, CompareModelsWithoutNoiseFavoursNoModel) {
  // p_M = 0: both families reduce to the identity channel.
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=0", "--wavelengths", "1555,1556", "-o", str("sim")}),
            kExitOk);
  {
    std::ofstream out(path("noise.csv"));
    out << io::kNoiseCsvHeader << '\n';
    for (double wl : {1555.0, 1556.0})
      for (int j = 0; j < 6; ++j) out << wl << ',' << j << ",0,1\n";
  }
  ASSERT_EQ(run_cli({"fit-process", str("sim/process.csv"), "-R", "32", "-T", "32", "--burn-in", "4000",
                     "--no-capacity", "-o", str("fit")}),
            kExitOk);
  ASSERT_EQ(run_cli({"compare-models", str("fit"), "--signal", str("sim/process.csv"), "--noise",
                     str("noise.csv"), "--starts", "4", "-o", str("cmp")}),
            kExitOk);
  std::ifstream in(path("cmp/model_comparison.json"));
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j.at("p_M").get<double>(), 0.0);
  ASSERT_EQ(j.at("models").size(), 2u);
  for (const auto& m : j.at("models")) EXPECT_GT(m.at("fidelity_mean").get<double>(), 0.99);
}

TEST_F(CliTest, UnitarityCurveValues) {
  ASSERT_EQ(run_cli({"unitarity-curve", "--model", "depolarizing", "dephasing", "--grid",
                     "0,0.5,1", "-o", str("curve")}),
            kExitOk);
  const auto rows = lines(path("curve/unitarity_curve.csv"));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows.front(), "model,p_m,inunitarity");
  EXPECT_EQ(rows[1].substr(0, 15), "depolarizing,0,");
}

TEST_F(CliTest, FitStateOnMixedNoise) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=1", "--noise", "--counts", "1e5", "-o", str("n")}),
            kExitOk);
  ASSERT_EQ(run_cli({"fit-state", str("n/noise.csv"), "-R", "64", "-T", "64", "-o", str("qst")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(path("qst/states.json")));
  EXPECT_TRUE(fs::exists(path("qst/metrics.csv")));
}

TEST_F(CliTest, ConvergenceProbeOnSmallData) {
  ASSERT_EQ(run_cli({"simulate", "depolarizing:p=0.3", "--counts", "100", "-o", str("sim")}),
            kExitOk);
  const int code = run_cli({"convergence-probe", str("sim/process.csv"), "-R", "64", "--max-thin",
                            "256", "-o", str("probe")});
  EXPECT_TRUE(code == kExitOk || code == kExitNotConverged);
  EXPECT_EQ(lines(path("probe/convergence.csv")).front(),
            "wavelength_nm,thinning,mean,std,acceptance_rate");
}

}  // namespace
}  // namespace qproc::cli
