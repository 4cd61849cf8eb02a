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


// Scenario files: versioned JSON with ordinary frequencies in GHz. Loading
// validates everything (unknown keys are errors) before any computation and
// converts to angular frequencies.

#ifndef GHZFORGE_SCENARIO_HPP
#define GHZFORGE_SCENARIO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghzforge/dynamics.hpp"
#include "ghzforge/model.hpp"

namespace ghzforge {

inline constexpr int kScenarioSchemaVersion = 1;

enum class CircuitKind { Single, Coupled };
enum class PhaseSelection { Auto, Forward, Conjugate };

std::string to_string(PhaseSelection p);

struct SweepSpec {
  /// "omega_r_multiple", "delta" or "j".
  std::string param;
  std::vector<double> values;
};

struct Scenario {
  std::string name;  ///< file stem
  std::string description;
  CircuitKind kind = CircuitKind::Single;
  SingleTlrCircuit single;
  CoupledTlrCircuit coupled;
  /// Variant labels in file order ("full", "intermediate", "effective").
  std::vector<std::string> variants;
  std::size_t n_max = 8;
  std::optional<std::size_t> n_max_effective;
  IntegratorConfig integrator;
  double t_final = 0.0;
  SamplePlan samples;
  PhaseSelection convention = PhaseSelection::Auto;
  std::optional<SweepSpec> sweep;
  double time_budget_s = 0.0;
  /// The parsed document, kept so summaries echo the input values verbatim.
  std::string source_json;

  std::size_t n_max_for(const std::string& variant) const;
};

/// Parses and validates a scenario document. Throws InputError naming the
/// offending key.
Scenario parse_scenario(const std::string& json_text, const std::string& name = "scenario");
Scenario load_scenario(const std::string& path);

/// Applies one sweep point to a copy of the scenario's circuit.
Scenario with_sweep_value(const Scenario& base, const std::string& param, double value);

/// Runs one variant of the scenario.
Trajectory run_variant(const Scenario& scenario, const std::string& variant);

/// Fidelity column for the scenario's phase selection.
const std::vector<double>& selected_fidelity(const Trajectory& traj, PhaseSelection selection);

}  // namespace ghzforge

#endif  // GHZFORGE_SCENARIO_HPP
