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


#include "ghzforge/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "json.hpp"

namespace ghzforge {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 12);
  return res.ec == std::errc() ? std::string(buf.data(), res.ptr) : std::string("nan");
}

std::string format_short(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return res.ec == std::errc() ? std::string(buf.data(), res.ptr) : std::string("nan");
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, PhaseSelection selection,
                          const std::vector<std::string>& mode_names) {
  out << "t_ns,fidelity,fidelity_forward,fidelity_conjugate,norm";
  for (const auto& m : mode_names) out << ",occupation_" << m;
  out << ",variant\n";
  const std::vector<double>& f = selected_fidelity(traj, selection);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format_number(traj.times[i]) << ',' << format_number(f[i]) << ','
        << format_number(traj.fidelity_forward[i]) << ','
        << format_number(traj.fidelity_conjugate[i]) << ',' << format_number(traj.norm[i]);
    for (const auto& occ : traj.mode_occupation) out << ',' << format_number(occ[i]);
    out << ',' << traj.label << '\n';
  }
}

TrajectorySummary summarize(const Trajectory& traj, PhaseSelection selection, double wall_time_s) {
  TrajectorySummary s;
  const std::vector<double>& f = selected_fidelity(traj, selection);
  s.variant = traj.label;
  s.t_final = traj.times.back();
  s.fidelity_final = f.back();
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] > f[best]) best = i;
  }
  s.peak_fidelity = f[best];
  s.peak_time = traj.times[best];
  switch (selection) {
    case PhaseSelection::Forward:
      s.convention = "forward";
      break;
    case PhaseSelection::Conjugate:
      s.convention = "conjugate";
      break;
    case PhaseSelection::Auto:
      s.convention = to_string(traj.convention);
      break;
  }
  s.max_norm_drift = traj.max_norm_drift();
  s.dt = traj.stats.dt;
  s.steps = traj.stats.steps;
  s.wall_time_s = wall_time_s;
  return s;
}

std::vector<std::string> mode_names(const Scenario& scenario) {
  if (scenario.kind == CircuitKind::Single) return {"a"};
  return {"P", "Q"};
}

std::string run_summary_json(const Scenario& scenario,
                             const std::vector<TrajectorySummary>& summaries, double wall_time_s) {
  nlohmann::ordered_json doc;
  doc["scenario"] = scenario.name;
  doc["ghz_phase_convention"] = to_string(scenario.convention);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json r;
    r["variant"] = s.variant;
    r["t_final_ns"] = s.t_final;
    r["fidelity_final"] = s.fidelity_final;
    r["peak_fidelity"] = s.peak_fidelity;
    r["peak_time_ns"] = s.peak_time;
    r["convention"] = s.convention;
    r["max_norm_drift"] = s.max_norm_drift;
    r["dt_ns"] = s.dt;
    r["steps"] = s.steps;
    r["wall_time_s"] = s.wall_time_s;
    runs.push_back(r);
  }
  doc["runs"] = runs;
  doc["parameters"] = nlohmann::ordered_json::parse(scenario.source_json);
  doc["wall_time_s"] = wall_time_s;
  return doc.dump(2);
}

}  // namespace ghzforge
