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


// Command-line front end: run, sweep, coupler, solve, selftest.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzforge/commands.hpp"
#include "ghzforge/errors.hpp"
#include "ghzforge/selftest.hpp"

int main(int argc, char** argv) {
  using namespace ghzforge;

  CLI::App app{"ghzforge: one-step GHZ generation in driven flux-qubit/resonator circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ghzforge 0.1.0");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Integrate every variant of a scenario file");
  run_cmd->add_option("scenario", run.scenario_path, "Scenario JSON")->required();
  run_cmd->add_option("--out-dir", run.out_dir, "Directory for CSV and JSON output");

  SweepOptions sweep;
  std::string sweep_param;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
  sweep_cmd->add_option("scenario", sweep.scenario_path, "Scenario JSON")->required();
  sweep_cmd->add_option("--param", sweep_param, "omega_r_multiple, delta (GHz) or j (GHz)");
  // Taken as a string so that an empty list reaches the command and is rejected there.
  std::string values_text;
  auto* values_opt = sweep_cmd->add_option("--values", values_text, "Comma-separated values");
  sweep_cmd->add_option("--out-dir", sweep.out_dir, "Directory for CSV and JSON output");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads (0: GHZFORGE_THREADS or hardware)");

  CouplerOptions coupler;
  auto* coupler_cmd = app.add_subcommand("coupler", "Tabulate the dc-SQUID coupler over external flux");
  coupler_cmd->add_option("--Lc", coupler.lc_ph, "Loop inductance (pH)");
  coupler_cmd->add_option("--Ic", coupler.ic_ua, "Junction critical current (uA)");
  coupler_cmd->add_option("--Mca", coupler.mca_ph, "Mutual inductance to resonator A (pH)");
  coupler_cmd->add_option("--Mcb", coupler.mcb_ph, "Mutual inductance to resonator B (pH)");
  coupler_cmd->add_option("--l", coupler.l, "Flux branch index");
  coupler_cmd->add_option("--IA0", coupler.ia0_na, "Zero-point current of resonator A (nA)");
  coupler_cmd->add_option("--IB0", coupler.ib0_na, "Zero-point current of resonator B (nA)");
  coupler_cmd->add_option("--phie-grid", coupler.phie_grid, "start:stop:count in flux quanta");
  coupler_cmd->add_option("--out-dir", coupler.out_dir, "Directory for coupler.csv");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the GHZ phase condition for circuit parameters");
  solve_cmd->add_option("--mode", solve.mode, "single or coupled")
      ->check(CLI::IsMember({"single", "coupled"}));
  solve_cmd->add_option("-n,--n", solve.n, "Decoupling-time index n >= 1");
  solve_cmd->add_option("-m,--m", solve.m, "Phase index m");
  solve_cmd->add_option("-l,--l", solve.l, "Cross-resonator phase index l (coupled)");
  solve_cmd->add_option("--xi", solve.xi, "Ratio delta'/J (coupled, odd)");
  solve_cmd->add_option("--g", solve.g_ghz, "Qubit-resonator coupling (GHz)");

  SelftestCommandOptions selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in invariant checks");
  selftest_cmd->add_flag("--quick", selftest.quick, "Fast subset");
  selftest_cmd->add_option("--inject-fault", selftest.inject_fault, "Corrupt one input on purpose")
      ->check(CLI::IsMember(selftest_fault_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*run_cmd) return cmd_run(run, std::cout, std::cerr);
  if (*sweep_cmd) {
    if (!sweep_param.empty()) sweep.param = sweep_param;
    if (values_opt->count() > 0) {
      std::vector<double> parsed;
      const int rc = guarded(
          [&] {
            for (const auto& item : CLI::detail::split(values_text, ',')) {
              const std::string trimmed = CLI::detail::trim_copy(item);
              if (trimmed.empty()) continue;
              double v = 0.0;
              if (!CLI::detail::lexical_cast(trimmed, v)) {
                throw InputError("--values: '" + trimmed + "' is not a number");
              }
              parsed.push_back(v);
            }
            return kExitOk;
          },
          std::cerr);
      if (rc != kExitOk) return rc;
      sweep.values = parsed;
    }
    return cmd_sweep(sweep, std::cout, std::cerr);
  }
  if (*coupler_cmd) return cmd_coupler(coupler, std::cout, std::cerr);
  if (*solve_cmd) return cmd_solve(solve, std::cout, std::cerr);
  if (*selftest_cmd) return cmd_selftest(selftest, std::cout, std::cerr);
  return kExitInternal;
}
