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


#include <clocale>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "ghzforge/errors.hpp"
#include "ghzforge/output.hpp"
#include "ghzforge/scenario.hpp"
#include "ghzforge/units.hpp"
#include "json.hpp"

namespace ghzforge {
namespace {

using nlohmann::json;

json minimal_single() {
  return json::parse(R"({
    "schema_version": 1,
    "circuit": "single",
    "resonator_ghz": 10.0,
    "drive_ghz": 10.1,
    "qubits": [{"gap_ghz": 10.1, "g_ghz": 0.05}, {"gap_ghz": 10.1, "g_ghz": 0.05}],
    "drive": {"rabi_multiple": 20},
    "variants": ["effective"],
    "n_max": 6,
    "t_final_ns": 1.0
  })");
}

void expect_input_error(const json& doc, const std::string& fragment) {
  try {
    parse_scenario(doc.dump(), "t");
    FAIL() << "accepted: " << doc.dump();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Scenario, ParsesMinimalSingle) {
  const Scenario s = parse_scenario(minimal_single().dump(), "mini");
  EXPECT_EQ(s.name, "mini");
  EXPECT_EQ(s.kind, CircuitKind::Single);
  EXPECT_NEAR(s.single.resonator_frequency, units::ghz_to_angular(10.0), 1e-12);
  EXPECT_NEAR(s.single.rabi, 20.0 * units::ghz_to_angular(0.1), 1e-9);
  EXPECT_EQ(s.variants, std::vector<std::string>{"effective"});
  EXPECT_EQ(s.n_max, 6u);
  EXPECT_DOUBLE_EQ(s.t_final, 1.0);
  EXPECT_EQ(s.convention, PhaseSelection::Auto);
}

TEST(Scenario, RejectsUnknownKeysEverywhere) {
  json a = minimal_single();
  a["resonator_ghzz"] = 10.0;
  expect_input_error(a, "resonator_ghzz");
  json b = minimal_single();
  b["qubits"][1]["gapghz"] = 1.0;
  expect_input_error(b, "gapghz");
  json c = minimal_single();
  c["drive"]["rabi"] = 1.0;
  expect_input_error(c, "rabi");
}

TEST(Scenario, SchemaChecks) {
  json v = minimal_single();
  v["schema_version"] = 2;
  expect_input_error(v, "schema_version");
  json m = minimal_single();
  m.erase("drive_ghz");
  expect_input_error(m, "drive_ghz");
  json d = minimal_single();
  d["drive"] = {{"rabi_ghz", 1.0}, {"rabi_multiple", 3}};
  expect_input_error(d, "exactly one");
  json k = minimal_single();
  k["circuit"] = "triple";
  expect_input_error(k, "circuit");
  json var = minimal_single();
  var["variants"] = {"exact"};
  expect_input_error(var, "exact");
  json conv = minimal_single();
  conv["ghz_phase_convention"] = "sideways";
  expect_input_error(conv, "ghz_phase_convention");
  json str = minimal_single();
  str["t_final_ns"] = "ten";
  expect_input_error(str, "t_final_ns");
  EXPECT_THROW(parse_scenario("{ not json", "t"), InputError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST(Scenario, BuilderPreconditionsSurfaceAtParse) {
  json off = minimal_single();
  off["qubits"][0]["gap_ghz"] = 10.3;
  EXPECT_THROW(parse_scenario(off.dump(), "t"), InputError);
  json zero = minimal_single();
  zero["resonator_ghz"] = 10.1;
  EXPECT_THROW(parse_scenario(zero.dump(), "t"), InputError);
}

TEST(Scenario, CoupledDefaultsAndSplit) {
  json c = json::parse(R"({
    "schema_version": 1, "circuit": "coupled", "resonator_ghz": 10.0, "coupling_j_ghz": 0.04,
    "drive_ghz": 10.12, "qubits": [{"gap_ghz": 10.12, "g_ghz": 0.05}, {"gap_ghz": 10.12, "g_ghz": 0.05}],
    "drive": {"rabi_multiple": 42}, "t_final_ns": 1.0
  })");
  const Scenario s = parse_scenario(c.dump(), "c");
  EXPECT_EQ(s.kind, CircuitKind::Coupled);
  EXPECT_DOUBLE_EQ(s.coupled.frequency_b, s.coupled.frequency_a);
  EXPECT_EQ(s.coupled.qubits[0].resonator, Resonator::A);
  EXPECT_EQ(s.coupled.qubits[1].resonator, Resonator::B);
  EXPECT_NEAR(s.coupled.rabi, 42.0 * units::ghz_to_angular(0.04), 1e-9);
  EXPECT_EQ(s.variants, std::vector<std::string>{"full"});
  c["variants"] = {"intermediate"};
  expect_input_error(c, "intermediate");
}

TEST(Scenario, SweepValues) {
  const Scenario base = parse_scenario(minimal_single().dump(), "t");
  const Scenario a = with_sweep_value(base, "omega_r_multiple", 40.0);
  EXPECT_NEAR(a.single.rabi, 40.0 * std::abs(base.single.detuning()), 1e-9);
  const Scenario d = with_sweep_value(base, "delta", -0.2);
  EXPECT_NEAR(d.single.detuning(), units::ghz_to_angular(-0.2), 1e-9);
  EXPECT_DOUBLE_EQ(d.single.qubits[0].gap, d.single.drive_frequency);
  EXPECT_THROW(with_sweep_value(base, "j", 0.1), InputError);
  EXPECT_THROW(with_sweep_value(base, "omega", 1.0), InputError);
  EXPECT_THROW(with_sweep_value(base, "delta", 0.0), InputError);
}

TEST(Scenario, BundledFilesValidate) {
  for (const char* name : {"fig2a", "fig2b", "fig4a", "fig4b"}) {
    const std::string path = std::string(GHZFORGE_SOURCE_DIR) + "/scenarios/" + name + ".json";
    const Scenario s = load_scenario(path);
    EXPECT_EQ(s.name, name);
    EXPECT_GT(s.time_budget_s, 0.0);
    EXPECT_FALSE(s.description.empty());
  }
  const Scenario b = load_scenario(std::string(GHZFORGE_SOURCE_DIR) + "/scenarios/fig2b.json");
  ASSERT_TRUE(b.sweep.has_value());
  EXPECT_EQ(b.sweep->values, (std::vector<double>{5, 10, 20, 40, 100}));
  EXPECT_TRUE(b.samples.has_window());
  EXPECT_LE(b.samples.window_every, 0.01);
}

TEST(Output, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-2.5e-9), "-2.5e-09");
  EXPECT_EQ(format_short(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(format_short(20.0), "20");
  // Locale must not leak into the separator.
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    EXPECT_EQ(format_number(1.5), "1.5");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST(Output, SummaryEchoesInputExactly) {
  json doc = minimal_single();
  doc["drive_ghz"] = 10.123456789012345;
  doc["resonator_ghz"] = 10.0234567890123;
  doc["qubits"][0]["gap_ghz"] = 10.123456789012345;
  doc["qubits"][1]["gap_ghz"] = 10.123456789012345;
  const Scenario s = parse_scenario(doc.dump(), "echo");
  const Trajectory tr = run_variant(s, "effective");
  const std::string text = run_summary_json(s, {summarize(tr, s.convention, 0.0)}, 0.0);
  const json out = json::parse(text);
  EXPECT_EQ(out["parameters"]["drive_ghz"].get<double>(), 10.123456789012345);
  EXPECT_EQ(out["parameters"]["resonator_ghz"].get<double>(), 10.0234567890123);
  EXPECT_EQ(out["runs"][0]["variant"], "effective");
  EXPECT_TRUE(out["runs"][0].contains("peak_time_ns"));
  EXPECT_TRUE(out.contains("wall_time_s"));
}

TEST(Output, CsvColumns) {
  const Scenario s = parse_scenario(minimal_single().dump(), "t");
  const Trajectory tr = run_variant(s, "effective");
  std::ostringstream csv;
  write_trajectory_csv(csv, tr, s.convention, mode_names(s));
  std::istringstream in(csv.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t_ns,fidelity,fidelity_forward,fidelity_conjugate,norm,occupation_a,variant");
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.substr(0, 6), "0,0.5,");
  EXPECT_EQ(first.substr(first.size() - 10), ",effective");
}

TEST(Output, ConventionSelection) {
  json doc = minimal_single();
  doc["ghz_phase_convention"] = "conjugate";
  const Scenario s = parse_scenario(doc.dump(), "t");
  const Trajectory tr = run_variant(s, "effective");
  EXPECT_EQ(&selected_fidelity(tr, s.convention), &tr.fidelity_conjugate);
  EXPECT_EQ(summarize(tr, s.convention, 0.0).convention, "conjugate");
}

}  // namespace
}  // namespace ghzforge
