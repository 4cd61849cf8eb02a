// Copyright 2026 The ghzforge Authors
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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ghzforge/commands.hpp"
#include "json.hpp"

namespace ghzforge {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Commands : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ghzforge_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::size_t count_files(const fs::path& d) const {
    if (!fs::exists(d)) return 0;
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(d), fs::directory_iterator{}));
  }

  fs::path dir_;
};

const char* kSmall = R"({
  "schema_version": 1,
  "circuit": "single",
  "resonator_ghz": 10.0,
  "drive_ghz": 10.1,
  "qubits": [{"gap_ghz": 10.1, "g_ghz": 0.05}, {"gap_ghz": 10.1, "g_ghz": 0.05}],
  "drive": {"rabi_multiple": 20},
  "variants": ["effective", "intermediate"],
  "n_max": 5,
  "t_final_ns": 0.5,
  "sample_every_ns": 0.05
})";

TEST_F(Commands, RunWritesCsvAndSummary) {
  const std::string path = write("small.json", kSmall);
  std::ostringstream out, err;
  RunOptions o{path, (dir_ / "out").string()};
  ASSERT_EQ(cmd_run(o, out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "small_effective.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "small_intermediate.csv"));
  const json summary = json::parse(read(dir_ / "out" / "small_summary.json"));
  EXPECT_EQ(summary["runs"].size(), 2u);
  EXPECT_EQ(json::parse(out.str()), summary);
  EXPECT_EQ(summary["parameters"]["drive_ghz"].get<double>(), 10.1);
}

TEST_F(Commands, RunIsByteDeterministic) {
  const std::string path = write("small.json", kSmall);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run({path, (dir_ / "a").string()}, out, err), kExitOk);
  ASSERT_EQ(cmd_run({path, (dir_ / "b").string()}, out, err), kExitOk);
  for (const char* f : {"small_effective.csv", "small_intermediate.csv"}) {
    EXPECT_EQ(read(dir_ / "a" / f), read(dir_ / "b" / f)) << f;
  }
}

TEST_F(Commands, MalformedScenarioExitsTwoWithoutOutput) {
  std::string bad = kSmall;
  bad.replace(bad.find("\"n_max\""), 7, "\"n_maxx\"");
  const std::string path = write("bad.json", bad);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run({path, (dir_ / "out").string()}, out, err), kExitInput);
  EXPECT_NE(err.str().find("n_maxx"), std::string::npos);
  EXPECT_EQ(count_files(dir_ / "out"), 0u);
  EXPECT_TRUE(out.str().empty());
}

TEST_F(Commands, CoarseStepExitsThree) {
  std::string coarse = kSmall;
  coarse.replace(coarse.find("\"n_max\""), 0, "\"integrator\": {\"dt_ns\": 0.05}, ");
  const std::string path = write("coarse.json", coarse);
  std::ostringstream out, err;
  EXPECT_EQ(cmd_run({path, (dir_ / "out").string()}, out, err), kExitPrecondition) << err.str();
  EXPECT_EQ(count_files(dir_ / "out"), 0u);
}

TEST_F(Commands, SweepFilesAndTable) {
  const std::string path = write("small.json", kSmall);
  SweepOptions o;
  o.scenario_path = path;
  o.out_dir = (dir_ / "sw").string();
  o.param = "omega_r_multiple";
  o.values = std::vector<double>{10.0, 20.5};
  o.workers = 2;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_sweep(o, out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(dir_ / "sw" / "small_omega_r_multiple=10.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sw" / "small_omega_r_multiple=20.5.csv"));
  const std::string table = read(dir_ / "sw" / "small_sweep.csv");
  EXPECT_EQ(table.substr(0, table.find('\n')), "value,peak_fidelity,peak_time_ns,fidelity_final,convention");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
  const json doc = json::parse(out.str());
  EXPECT_EQ(doc["points"].size(), 2u);
  EXPECT_EQ(doc["variant"], "effective");
}

TEST_F(Commands, SingleValueSweepMatchesRun) {
  const std::string path = write("small.json", kSmall);
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run({path, (dir_ / "run").string()}, out, err), kExitOk);
  SweepOptions o;
  o.scenario_path = path;
  o.out_dir = (dir_ / "sw").string();
  o.param = "omega_r_multiple";
  o.values = std::vector<double>{20.0};
  ASSERT_EQ(cmd_sweep(o, out, err), kExitOk);
  EXPECT_EQ(read(dir_ / "run" / "small_effective.csv"), read(dir_ / "sw" / "small_omega_r_multiple=20.csv"));
}

TEST_F(Commands, SweepRejectsEmptyAndBadParameters) {
  const std::string path = write("small.json", kSmall);
  std::ostringstream out, err;
  SweepOptions empty;
  empty.scenario_path = path;
  empty.out_dir = (dir_ / "sw").string();
  empty.param = "omega_r_multiple";
  empty.values = std::vector<double>{};
  EXPECT_EQ(cmd_sweep(empty, out, err), kExitInput);
  SweepOptions none = empty;
  none.param.reset();
  none.values = std::vector<double>{1.0};
  EXPECT_EQ(cmd_sweep(none, out, err), kExitInput);
  SweepOptions bad = empty;
  bad.param = "j";
  bad.values = std::vector<double>{0.05};
  EXPECT_EQ(cmd_sweep(bad, out, err), kExitInput);
  EXPECT_EQ(count_files(dir_ / "sw"), 0u);
}

TEST_F(Commands, CouplerTableAndSummary) {
  CouplerOptions o;
  o.out_dir = dir_.string();
  o.phie_grid = "-1:1:201";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_coupler(o, out, err), kExitOk) << err.str();
  const json doc = json::parse(out.str());
  EXPECT_NEAR(doc["beta_l"].get<double>(), 0.9116, 1e-4);
  const auto crossings = doc["zero_crossings_phi_e"].get<std::vector<double>>();
  ASSERT_EQ(crossings.size(), 2u);
  EXPECT_NEAR(crossings[0], -0.5, 1e-9);
  EXPECT_NEAR(crossings[1], 0.5, 1e-9);
  const std::string csv = read(dir_ / "coupler.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "phi_e,m_eff_ph,j_rad_per_ns,j_ghz");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 202);
}

TEST_F(Commands, CouplerErrors) {
  std::ostringstream out, err;
  CouplerOptions hyst;
  hyst.ic_ua = 3.0;
  hyst.out_dir = dir_.string();
  EXPECT_EQ(cmd_coupler(hyst, out, err), kExitInput);
  EXPECT_NE(err.str().find("nonhysteretic"), std::string::npos);
  CouplerOptions grid;
  grid.phie_grid = "0:1";
  grid.out_dir = dir_.string();
  EXPECT_EQ(cmd_coupler(grid, out, err), kExitInput);
  EXPECT_FALSE(fs::exists(dir_ / "coupler.csv"));
}

TEST_F(Commands, SolveSingleAndCoupled) {
  std::ostringstream out, err;
  SolveOptions s;
  ASSERT_EQ(cmd_solve(s, out, err), kExitOk);
  const json single = json::parse(out.str());
  EXPECT_NEAR(single["delta_ghz"][0].get<double>(), 0.1, 1e-12);
  EXPECT_NEAR(single["gate_time_ns"].get<double>(), 10.0, 1e-12);
  EXPECT_EQ(single["scenario_fragment"]["circuit"], "single");

  std::ostringstream out2;
  SolveOptions c;
  c.mode = "coupled";
  c.g_ghz = 0.04 * std::sqrt(2.0);
  ASSERT_EQ(cmd_solve(c, out2, err), kExitOk);
  const json coupled = json::parse(out2.str());
  EXPECT_NEAR(coupled["j_ghz"].get<double>(), 0.04, 1e-12);
  EXPECT_NEAR(coupled["gate_time_ns"].get<double>(), 25.0, 1e-9);

  std::ostringstream err3;
  c.xi = 5;
  EXPECT_EQ(cmd_solve(c, out, err3), kExitUnsolvable);
  EXPECT_NE(err3.str().find("ratio"), std::string::npos);
  SolveOptions badmode;
  badmode.mode = "triple";
  EXPECT_EQ(cmd_solve(badmode, out, err), kExitInput);
}

TEST_F(Commands, SolveFragmentRuns) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_solve(SolveOptions{}, out, err), kExitOk);
  json frag = json::parse(out.str())["scenario_fragment"];
  frag["schema_version"] = 1;
  frag["drive"] = {{"rabi_multiple", 20}};
  frag["variants"] = {"effective"};
  frag["n_max"] = 8;
  const std::string path = write("frag.json", frag.dump());
  std::ostringstream run_out;
  ASSERT_EQ(cmd_run({path, (dir_ / "f").string()}, run_out, err), kExitOk) << err.str();
  EXPECT_GT(json::parse(run_out.str())["runs"][0]["fidelity_final"].get<double>(), 0.999);
}

TEST_F(Commands, Selftest) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_selftest({true, ""}, out, err), kExitOk) << out.str();
  std::ostringstream bad;
  EXPECT_NE(cmd_selftest({true, "gamma-prefactor"}, bad, err), kExitOk);
  EXPECT_NE(bad.str().find("FAIL  gamma closed form vs quadrature"), std::string::npos);
}

}  // namespace
}  // namespace ghzforge
