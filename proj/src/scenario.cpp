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


#include "ghzforge/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ghzforge/errors.hpp"
#include "ghzforge/units.hpp"
#include "json.hpp"

namespace ghzforge {
namespace {

using nlohmann::json;
using units::ghz_to_angular;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw InputError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing required key '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InputError(where + ": value must be finite");
  return d;
}

double positive(const json& v, const std::string& where) {
  const double d = number(v, where);
  if (!(d > 0.0)) throw InputError(where + ": must be positive");
  return d;
}

long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<long>();
}

std::string string_value(const json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + ": expected a string");
  return v.get<std::string>();
}

double optional_number(const json& obj, const std::string& key, double fallback,
                       const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, where + "." + key);
}

struct DriveSpec {
  std::optional<double> rabi;        // rad/ns
  std::optional<double> multiple;    // x |delta| or x |J|
  std::optional<double> amplitude;   // rad/ns, resonator drive
};

DriveSpec parse_drive(const json& d, CircuitKind kind) {
  const std::string where = "drive";
  check_keys(d, {"rabi_ghz", "rabi_multiple", "resonator_amplitude_ghz"}, where);
  DriveSpec spec;
  int count = 0;
  if (d.contains("rabi_ghz")) {
    spec.rabi = ghz_to_angular(number(d["rabi_ghz"], where + ".rabi_ghz"));
    ++count;
  }
  if (d.contains("rabi_multiple")) {
    spec.multiple = number(d["rabi_multiple"], where + ".rabi_multiple");
    ++count;
  }
  if (d.contains("resonator_amplitude_ghz")) {
    if (kind != CircuitKind::Single) {
      throw InputError(where + ".resonator_amplitude_ghz: only supported for single circuits");
    }
    spec.amplitude = ghz_to_angular(number(d["resonator_amplitude_ghz"], where + ".resonator_amplitude_ghz"));
    ++count;
  }
  if (count != 1) {
    throw InputError(where +
                     ": give exactly one of rabi_ghz, rabi_multiple, resonator_amplitude_ghz");
  }
  return spec;
}

std::vector<QubitSpec> parse_qubits(const json& list, CircuitKind kind, bool& explicit_split) {
  if (!list.is_array() || list.empty()) throw InputError("qubits: expected a non-empty array");
  if (list.size() > 12) throw InputError("qubits: at most 12 qubits are supported");
  std::vector<QubitSpec> out;
  explicit_split = false;
  bool any_missing = false;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "qubits[" + std::to_string(k) + "]";
    const json& q = list[k];
    check_keys(q, {"gap_ghz", "g_ghz", "resonator", "rabi_ghz", "bias_ghz"}, where);
    QubitSpec spec;
    spec.gap = ghz_to_angular(positive(require(q, "gap_ghz", where), where + ".gap_ghz"));
    spec.coupling = ghz_to_angular(number(require(q, "g_ghz", where), where + ".g_ghz"));
    if (spec.coupling < 0.0) throw InputError(where + ".g_ghz: must be non-negative");
    if (q.contains("rabi_ghz")) spec.rabi = ghz_to_angular(number(q["rabi_ghz"], where + ".rabi_ghz"));
    spec.bias = ghz_to_angular(optional_number(q, "bias_ghz", 0.0, where));
    if (spec.bias != 0.0) {
      throw InputError(where + ".bias_ghz: only the optimal point (zero bias) is supported");
    }
    if (q.contains("resonator")) {
      if (kind != CircuitKind::Coupled) {
        throw InputError(where + ".resonator: only meaningful for coupled circuits");
      }
      const std::string r = string_value(q["resonator"], where + ".resonator");
      if (r != "A" && r != "B") throw InputError(where + ".resonator: expected \"A\" or \"B\"");
      spec.resonator = r == "A" ? Resonator::A : Resonator::B;
      explicit_split = true;
    } else {
      any_missing = true;
    }
    out.push_back(spec);
  }
  if (explicit_split && any_missing) {
    throw InputError("qubits: give 'resonator' for every qubit or for none");
  }
  return out;
}

bool is_effective(const std::string& variant) {
  return variant == "effective" || variant == "intermediate";
}

}  // namespace

std::string to_string(PhaseSelection p) {
  switch (p) {
    case PhaseSelection::Auto:
      return "auto";
    case PhaseSelection::Forward:
      return "forward";
    case PhaseSelection::Conjugate:
      return "conjugate";
  }
  return "auto";
}

std::size_t Scenario::n_max_for(const std::string& variant) const {
  return is_effective(variant) && n_max_effective ? *n_max_effective : n_max;
}

Scenario parse_scenario(const std::string& json_text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  check_keys(doc,
             {"schema_version", "description", "circuit", "resonator_ghz", "resonator_b_ghz",
              "coupling_j_ghz", "drive_ghz", "qubits", "drive", "variants", "n_max",
              "n_max_effective", "integrator", "t_final_ns", "sample_every_ns", "window",
              "ghz_phase_convention", "sweep", "time_budget_s"},
             "scenario");
  const long version = integer(require(doc, "schema_version", "scenario"), "schema_version");
  if (version != kScenarioSchemaVersion) {
    throw InputError("schema_version " + std::to_string(version) + " is not supported (expected " +
                     std::to_string(kScenarioSchemaVersion) + ")");
  }
  Scenario s;
  s.name = name;
  s.source_json = doc.dump();
  if (doc.contains("description")) s.description = string_value(doc["description"], "description");

  const std::string kind = string_value(require(doc, "circuit", "scenario"), "circuit");
  if (kind == "single") {
    s.kind = CircuitKind::Single;
  } else if (kind == "coupled") {
    s.kind = CircuitKind::Coupled;
  } else {
    throw InputError("circuit: expected \"single\" or \"coupled\", got \"" + kind + "\"");
  }

  const double wr = ghz_to_angular(positive(require(doc, "resonator_ghz", "scenario"), "resonator_ghz"));
  const double wd = ghz_to_angular(positive(require(doc, "drive_ghz", "scenario"), "drive_ghz"));
  bool explicit_split = false;
  std::vector<QubitSpec> qubits = parse_qubits(require(doc, "qubits", "scenario"), s.kind, explicit_split);
  const DriveSpec drive = parse_drive(require(doc, "drive", "scenario"), s.kind);

  if (s.kind == CircuitKind::Single) {
    for (const char* key : {"resonator_b_ghz", "coupling_j_ghz"}) {
      if (doc.contains(key)) throw InputError(std::string(key) + ": only valid for coupled circuits");
    }
    SingleTlrCircuit& c = s.single;
    c.resonator_frequency = wr;
    c.drive_frequency = wd;
    c.qubits = qubits;
    if (c.detuning() == 0.0) throw InputError("drive_ghz: equals resonator_ghz (zero detuning)");
    if (drive.rabi) c.rabi = *drive.rabi;
    if (drive.multiple) c.rabi = *drive.multiple * std::abs(c.detuning());
    if (drive.amplitude) {
      c = displace_to_qubit_drive(c, ResonatorDrive{*drive.amplitude, wd}).circuit;
    }
  } else {
    CoupledTlrCircuit& c = s.coupled;
    c.frequency_a = wr;
    c.frequency_b = doc.contains("resonator_b_ghz")
                        ? ghz_to_angular(positive(doc["resonator_b_ghz"], "resonator_b_ghz"))
                        : wr;
    c.resonator_coupling =
        ghz_to_angular(number(require(doc, "coupling_j_ghz", "scenario"), "coupling_j_ghz"));
    c.drive_frequency = wd;
    c.qubits = qubits;
    if (!explicit_split) assign_default_split(c);
    if (drive.rabi) c.rabi = *drive.rabi;
    if (drive.multiple) c.rabi = *drive.multiple * std::abs(c.resonator_coupling);
  }

  if (doc.contains("variants")) {
    const json& v = doc["variants"];
    if (!v.is_array() || v.empty()) throw InputError("variants: expected a non-empty array");
    for (const auto& item : v) s.variants.push_back(string_value(item, "variants[]"));
  } else {
    s.variants = {"full"};
  }
  const std::set<std::string> allowed = s.kind == CircuitKind::Single
                                            ? std::set<std::string>{"full", "intermediate", "effective"}
                                            : std::set<std::string>{"full", "effective"};
  std::set<std::string> seen;
  for (const auto& v : s.variants) {
    if (!allowed.count(v)) throw InputError("variants: '" + v + "' is not valid for this circuit");
    if (!seen.insert(v).second) throw InputError("variants: '" + v + "' listed twice");
  }

  if (doc.contains("n_max")) {
    const long n = integer(doc["n_max"], "n_max");
    if (n < 2 || n > 64) throw InputError("n_max: must be in [2, 64]");
    s.n_max = static_cast<std::size_t>(n);
  }
  if (doc.contains("n_max_effective")) {
    const long n = integer(doc["n_max_effective"], "n_max_effective");
    if (n < 2 || n > 64) throw InputError("n_max_effective: must be in [2, 64]");
    s.n_max_effective = static_cast<std::size_t>(n);
  }
  if (doc.contains("integrator")) {
    const json& in = doc["integrator"];
    check_keys(in, {"dt_ns", "renormalize_every"}, "integrator");
    if (in.contains("dt_ns")) {
      s.integrator.dt = number(in["dt_ns"], "integrator.dt_ns");
      if (s.integrator.dt < 0.0) throw InputError("integrator.dt_ns: must be non-negative");
    }
    if (in.contains("renormalize_every")) {
      const long r = integer(in["renormalize_every"], "integrator.renormalize_every");
      if (r < 0) throw InputError("integrator.renormalize_every: must be non-negative");
      s.integrator.renormalize_every = static_cast<std::size_t>(r);
    }
  }
  s.t_final = positive(require(doc, "t_final_ns", "scenario"), "t_final_ns");
  if (s.t_final > 1e4) throw InputError("t_final_ns: implausibly long (> 10 us)");
  s.samples.every = doc.contains("sample_every_ns") ? positive(doc["sample_every_ns"], "sample_every_ns")
                                                    : 0.01;
  if (doc.contains("window")) {
    const json& w = doc["window"];
    check_keys(w, {"begin_ns", "end_ns", "every_ns"}, "window");
    s.samples.window_begin = number(require(w, "begin_ns", "window"), "window.begin_ns");
    s.samples.window_end = number(require(w, "end_ns", "window"), "window.end_ns");
    s.samples.window_every = positive(require(w, "every_ns", "window"), "window.every_ns");
    if (!(s.samples.window_end > s.samples.window_begin)) {
      throw InputError("window: end_ns must exceed begin_ns");
    }
  }
  if (doc.contains("ghz_phase_convention")) {
    const std::string p = string_value(doc["ghz_phase_convention"], "ghz_phase_convention");
    if (p == "auto") {
      s.convention = PhaseSelection::Auto;
    } else if (p == "forward") {
      s.convention = PhaseSelection::Forward;
    } else if (p == "conjugate") {
      s.convention = PhaseSelection::Conjugate;
    } else {
      throw InputError("ghz_phase_convention: expected auto, forward or conjugate");
    }
  }
  if (doc.contains("sweep")) {
    const json& sw = doc["sweep"];
    check_keys(sw, {"param", "values"}, "sweep");
    SweepSpec spec;
    spec.param = string_value(require(sw, "param", "sweep"), "sweep.param");
    const json& values = require(sw, "values", "sweep");
    if (!values.is_array()) throw InputError("sweep.values: expected an array");
    for (const auto& v : values) spec.values.push_back(number(v, "sweep.values[]"));
    s.sweep = spec;
  }
  if (doc.contains("time_budget_s")) s.time_budget_s = positive(doc["time_budget_s"], "time_budget_s");

  // Run the circuit validation now so errors surface before computation.
  for (const auto& v : s.variants) {
    ScopedWarningCapture quiet;
    if (s.kind == CircuitKind::Single) {
      build_single(s.single, v == "full" ? SingleVariant::Full
                                         : v == "effective" ? SingleVariant::Effective
                                                            : SingleVariant::Intermediate,
                   2);
    } else {
      build_coupled(s.coupled, v == "full" ? CoupledVariant::Full : CoupledVariant::Effective, 2);
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), std::filesystem::path(path).stem().string());
}

Scenario with_sweep_value(const Scenario& base, const std::string& param, double value) {
  if (!std::isfinite(value)) throw InputError("sweep value must be finite");
  Scenario s = base;
  if (param == "omega_r_multiple") {
    if (s.kind == CircuitKind::Single) {
      s.single.rabi = value * std::abs(s.single.detuning());
      for (auto& q : s.single.qubits) q.rabi.reset();
    } else {
      s.coupled.rabi = value * std::abs(s.coupled.resonator_coupling);
      for (auto& q : s.coupled.qubits) q.rabi.reset();
    }
  } else if (param == "delta") {
    // Detuning in GHz; the drive follows and the qubits stay resonant with it.
    const double delta = ghz_to_angular(value);
    if (delta == 0.0) throw InputError("sweep delta: zero detuning");
    if (s.kind == CircuitKind::Single) {
      s.single.drive_frequency = s.single.resonator_frequency - delta;
      for (auto& q : s.single.qubits) q.gap = s.single.drive_frequency;
      if (!(s.single.drive_frequency > 0.0)) throw InputError("sweep delta: drive frequency <= 0");
    } else {
      s.coupled.drive_frequency = s.coupled.frequency_a - delta;
      for (auto& q : s.coupled.qubits) q.gap = s.coupled.drive_frequency;
      if (!(s.coupled.drive_frequency > 0.0)) throw InputError("sweep delta: drive frequency <= 0");
    }
  } else if (param == "j") {
    if (s.kind != CircuitKind::Coupled) throw InputError("sweep j: only valid for coupled circuits");
    s.coupled.resonator_coupling = ghz_to_angular(value);
  } else {
    throw InputError("sweep param '" + param + "': expected omega_r_multiple, delta or j");
  }
  return s;
}

Trajectory run_variant(const Scenario& scenario, const std::string& variant) {
  const std::size_t n_max = scenario.n_max_for(variant);
  if (scenario.kind == CircuitKind::Single) {
    SingleVariant v = variant == "full"           ? SingleVariant::Full
                      : variant == "intermediate" ? SingleVariant::Intermediate
                      : variant == "effective"    ? SingleVariant::Effective
                                                  : throw InputError("unknown variant " + variant);
    return run_scenario_single(scenario.single, v, n_max, scenario.t_final, scenario.integrator,
                               scenario.samples);
  }
  CoupledVariant v = variant == "full"        ? CoupledVariant::Full
                     : variant == "effective" ? CoupledVariant::Effective
                                              : throw InputError("unknown variant " + variant);
  return run_scenario_coupled(scenario.coupled, v, n_max, scenario.t_final, scenario.integrator,
                              scenario.samples);
}

const std::vector<double>& selected_fidelity(const Trajectory& traj, PhaseSelection selection) {
  switch (selection) {
    case PhaseSelection::Forward:
      return traj.fidelity_forward;
    case PhaseSelection::Conjugate:
      return traj.fidelity_conjugate;
    case PhaseSelection::Auto:
      break;
  }
  return traj.fidelity;
}

}  // namespace ghzforge
