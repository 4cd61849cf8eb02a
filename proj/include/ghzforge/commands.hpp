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


// Subcommand implementations behind the ghzforge executable. Each returns
// the process exit code: 0 success, 1 internal error, 2 input error,
// 3 numerical precondition, 4 unsolvable condition.

#ifndef GHZFORGE_COMMANDS_HPP
#define GHZFORGE_COMMANDS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ghzforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitUnsolvable = 4;

/// Runs `body`, mapping library exceptions to exit codes and messages on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

struct RunOptions {
  std::string scenario_path;
  std::string out_dir = ".";
};
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::string> param;
  std::optional<std::vector<double>> values;
  std::size_t workers = 0;
};
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

struct CouplerOptions {
  double lc_ph = 200.0;
  double ic_ua = 1.5;
  double mca_ph = 60.0;
  double mcb_ph = 60.0;
  int l = 0;
  double ia0_na = 50.0;
  double ib0_na = 50.0;
  /// "start:stop:count" in units of the flux quantum.
  std::string phie_grid = "-1:1:201";
  std::string out_dir = ".";
};
int cmd_coupler(const CouplerOptions& options, std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::string mode = "single";
  int n = 1;
  int m = 0;
  int l = 0;
  int xi = 3;
  double g_ghz = 0.05;
};
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct SelftestCommandOptions {
  bool quick = false;
  std::string inject_fault;
};
int cmd_selftest(const SelftestCommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ghzforge

#endif  // GHZFORGE_COMMANDS_HPP
