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

"""One-step GHZ generation in driven flux-qubit/resonator circuits."""

from ghzforge._core import (
    CoupledConditionSolution,
    InputError,
    PreconditionError,
    Scenario,
    SingleConditionSolution,
    SquidCoupler,
    UnsolvableConditionError,
    angular_to_ghz,
    b_k,
    decoupling_time,
    evolution_at_Tn,
    fidelity_estimate,
    fidelity_estimate_amplitude,
    gamma_kj,
    ghz_target,
    ghz_to_angular,
    load_scenario,
    parse_scenario,
    run_selftest,
    run_variant,
    solve_coupled_condition,
    solve_single_condition,
)

__version__ = "0.1.0"
