# Copyright 2026 The ghzforge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math
import os
import pathlib

import numpy as np
import pytest

import ghzforge as gf

SOURCE = pathlib.Path(os.environ.get("GHZFORGE_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))

SMALL = """{
  "schema_version": 1,
  "circuit": "single",
  "resonator_ghz": 10.0,
  "drive_ghz": 10.1,
  "qubits": [{"gap_ghz": 10.1, "g_ghz": 0.05}, {"gap_ghz": 10.1, "g_ghz": 0.05}],
  "drive": {"rabi_multiple": 20},
  "variants": ["effective"],
  "n_max": 8,
  "t_final_ns": 10.0,
  "sample_every_ns": 0.5
}"""


def test_unit_round_trip():
    assert gf.ghz_to_angular(1.0) == pytest.approx(2 * math.pi)
    assert gf.angular_to_ghz(gf.ghz_to_angular(0.37)) == pytest.approx(0.37)


def test_decoupling_and_phase():
    g = gf.ghz_to_angular(0.05)
    sol = gf.solve_single_condition(g)
    assert sol.gate_time == pytest.approx(10.0, abs=1e-12)
    assert abs(gf.b_k(sol.gate_time, g, sol.delta_negative)) < 1e-13
    assert abs(gf.gamma_kj(sol.gate_time, g, g, sol.delta_negative).real) == pytest.approx(math.pi / 8)


def test_gate_gives_ghz_for_two_qubits():
    g = gf.ghz_to_angular(0.05)
    sol = gf.solve_single_condition(g)
    u = np.asarray(gf.evolution_at_Tn([g, g], sol.delta_negative, 1))
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-12)
    psi = u[:, 3]
    best = max(abs(np.vdot(np.asarray(gf.ghz_target(2, c)), psi)) ** 2 for c in ("forward", "conjugate"))
    assert best == pytest.approx(1.0, abs=1e-12)


def test_coupled_solver_and_errors():
    gc = gf.ghz_to_angular(0.04) * math.sqrt(2)
    sol = gf.solve_coupled_condition(gc)
    assert sol.gate_time == pytest.approx(25.0)
    with pytest.raises(gf.UnsolvableConditionError):
        gf.solve_coupled_condition(gc, xi=5)


def test_coupler():
    c = gf.SquidCoupler()
    assert c.beta_l == pytest.approx(0.9116, abs=1e-4)
    assert abs(c.m_eff(0.5)) < 1e-12
    with pytest.raises(gf.InputError, match="nonhysteretic"):
        gf.SquidCoupler(ic_ua=3.0)


def test_run_variant_from_text():
    sc = gf.parse_scenario(SMALL, "small")
    result = gf.run_variant(sc, "effective")
    assert result["times"][-1] == pytest.approx(10.0)
    assert result["fidelity"][-1] > 0.999
    assert max(abs(n - 1.0) for n in result["norm"]) < 1e-8


def test_bundled_scenario_loads():
    sc = gf.load_scenario(str(SOURCE / "scenarios" / "fig2a.json"))
    assert sc.n_max == 10
    assert "full" in sc.variants


def test_bad_scenario_rejected():
    with pytest.raises(gf.InputError):
        gf.parse_scenario(SMALL.replace('"n_max"', '"n_maxx"'), "bad")


def test_selftest_quick():
    results = gf.run_selftest(True)
    assert all(passed for _, passed, _ in results)
    faulty = gf.run_selftest(True, "gate-sign")
    assert not all(passed for _, passed, _ in faulty)
