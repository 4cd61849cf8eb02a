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


// Python bindings for the ghzforge core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghzforge/analytic.hpp"
#include "ghzforge/dynamics.hpp"
#include "ghzforge/errors.hpp"
#include "ghzforge/scenario.hpp"
#include "ghzforge/selftest.hpp"
#include "ghzforge/units.hpp"

namespace py = pybind11;
using namespace ghzforge;

namespace {

py::dict trajectory_dict(const Trajectory& tr) {
  py::dict d;
  d["label"] = tr.label;
  d["times"] = tr.times;
  d["fidelity"] = tr.fidelity;
  d["fidelity_forward"] = tr.fidelity_forward;
  d["fidelity_conjugate"] = tr.fidelity_conjugate;
  d["norm"] = tr.norm;
  d["mode_occupation"] = tr.mode_occupation;
  d["convention"] = to_string(tr.convention);
  d["dt"] = tr.stats.dt;
  d["steps"] = tr.stats.steps;
  d["final_state"] = tr.final_state;
  return d;
}

GhzPhase phase_from(const std::string& name) {
  if (name == "forward") return GhzPhase::Forward;
  if (name == "conjugate") return GhzPhase::Conjugate;
  throw InputError("phase must be 'forward' or 'conjugate'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-step GHZ generation in driven flux-qubit/resonator circuits";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<PreconditionError> precondition_error(m, "PreconditionError", PyExc_RuntimeError);
  static py::exception<UnsolvableConditionError> unsolvable_error(m, "UnsolvableConditionError",
                                                                  PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const PreconditionError& e) {
      PyErr_SetString(precondition_error.ptr(), e.what());
    } catch (const UnsolvableConditionError& e) {
      PyErr_SetString(unsolvable_error.ptr(), e.what());
    }
  });

  m.def("ghz_to_angular", &units::ghz_to_angular, py::arg("ghz"));
  m.def("angular_to_ghz", &units::angular_to_ghz, py::arg("rad_per_ns"));

  // Closed forms; rates in rad/ns, times in ns.
  m.def("b_k", &b_k, py::arg("t"), py::arg("g"), py::arg("delta"));
  m.def("gamma_kj", &gamma_kj, py::arg("t"), py::arg("g_k"), py::arg("g_j"), py::arg("delta"));
  m.def("decoupling_time", &decoupling_time, py::arg("delta"), py::arg("n") = 1);
  m.def(
      "evolution_at_Tn",
      [](const std::vector<double>& g, double delta, int n) { return evolution_at_Tn(g, delta, n).matrix(); },
      py::arg("g"), py::arg("delta"), py::arg("n") = 1);
  m.def(
      "ghz_target",
      [](std::size_t n, const std::string& phase) { return ghz_target(n, phase_from(phase)).amplitudes(); },
      py::arg("n_qubits"), py::arg("phase") = "forward");
  m.def("fidelity_estimate", &fidelity_estimate, py::arg("n_qubits"), py::arg("g"), py::arg("rabi"),
        py::arg("t"));
  m.def("fidelity_estimate_amplitude", &fidelity_estimate_amplitude, py::arg("n_qubits"), py::arg("g"),
        py::arg("rabi"));

  py::class_<SingleConditionSolution>(m, "SingleConditionSolution")
      .def_readonly("delta_positive", &SingleConditionSolution::delta_positive)
      .def_readonly("delta_negative", &SingleConditionSolution::delta_negative)
      .def_readonly("gate_time", &SingleConditionSolution::gate_time)
      .def_readonly("pair_phase", &SingleConditionSolution::pair_phase)
      .def_readonly("residual", &SingleConditionSolution::residual);
  m.def("solve_single_condition", &solve_single_condition, py::arg("g"), py::arg("n") = 1, py::arg("m") = 0);

  py::class_<CoupledConditionSolution>(m, "CoupledConditionSolution")
      .def_readonly("delta_prime", &CoupledConditionSolution::delta_prime)
      .def_readonly("j", &CoupledConditionSolution::j)
      .def_readonly("gate_time", &CoupledConditionSolution::gate_time)
      .def_readonly("residual_same", &CoupledConditionSolution::residual_same)
      .def_readonly("residual_cross", &CoupledConditionSolution::residual_cross);
  m.def("solve_coupled_condition", &solve_coupled_condition, py::arg("g"), py::arg("xi") = 3,
        py::arg("n") = 1, py::arg("m") = 0, py::arg("l") = 0);

  py::class_<SquidCoupler>(m, "SquidCoupler")
      .def(py::init<double, double, double, double, int, double, double>(), py::arg("lc_ph") = 200.0,
           py::arg("ic_ua") = 1.5, py::arg("mca_ph") = 60.0, py::arg("mcb_ph") = 60.0, py::arg("l") = 0,
           py::arg("ia0_na") = 50.0, py::arg("ib0_na") = 50.0)
      .def_property_readonly("beta_l", &SquidCoupler::beta_l)
      .def("m_eff", &SquidCoupler::m_eff, py::arg("phi_e"))
      .def("j_coupling", &SquidCoupler::j_coupling, py::arg("phi_e"))
      .def("m_eff_bound", &SquidCoupler::m_eff_bound);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("description", &Scenario::description)
      .def_readonly("variants", &Scenario::variants)
      .def_readonly("t_final", &Scenario::t_final)
      .def_readonly("n_max", &Scenario::n_max)
      .def("with_sweep_value", [](const Scenario& s, const std::string& param, double value) {
        return with_sweep_value(s, param, value);
      });
  m.def("parse_scenario", &parse_scenario, py::arg("json_text"), py::arg("name") = "scenario");
  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def(
      "run_variant",
      [](const Scenario& s, const std::string& variant) {
        Trajectory tr;
        {
          py::gil_scoped_release release;
          tr = run_variant(s, variant);
        }
        return trajectory_dict(tr);
      },
      py::arg("scenario"), py::arg("variant") = "full");

  m.def(
      "run_selftest",
      [](bool quick, const std::string& fault) {
        py::list out;
        for (const auto& r : run_selftest({quick, fault})) out.append(py::make_tuple(r.name, r.passed, r.detail));
        return out;
      },
      py::arg("quick") = true, py::arg("inject_fault") = "");
}
