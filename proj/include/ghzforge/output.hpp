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


// Locale-independent CSV and JSON emission for trajectories and tables.

#ifndef GHZFORGE_OUTPUT_HPP
#define GHZFORGE_OUTPUT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "ghzforge/dynamics.hpp"
#include "ghzforge/scenario.hpp"

namespace ghzforge {

/// Decimal with 12 significant digits, '.' separator, no locale.
std::string format_number(double value);
/// Shortest round-trip representation, used in file names.
std::string format_short(double value);

/// Columns: t_ns, fidelity, fidelity_forward, fidelity_conjugate, norm,
/// occupation_<mode>..., variant. `fidelity` follows `selection`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, PhaseSelection selection,
                          const std::vector<std::string>& mode_names);

struct TrajectorySummary {
  std::string variant;
  double t_final = 0.0;
  double fidelity_final = 0.0;
  double peak_fidelity = 0.0;
  double peak_time = 0.0;
  std::string convention;  ///< convention that produced the reported values
  double max_norm_drift = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  double wall_time_s = 0.0;
};

TrajectorySummary summarize(const Trajectory& traj, PhaseSelection selection, double wall_time_s);

/// Mode labels for a scenario: {"a"} or {"P", "Q"}.
std::vector<std::string> mode_names(const Scenario& scenario);

/// JSON summary body for a run: per-variant summaries and the verbatim
/// input echo. Returned as serialized text.
std::string run_summary_json(const Scenario& scenario,
                             const std::vector<TrajectorySummary>& summaries, double wall_time_s);

}  // namespace ghzforge

#endif  // GHZFORGE_OUTPUT_HPP
