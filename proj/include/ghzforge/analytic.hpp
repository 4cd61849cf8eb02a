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


// Closed-form results for the single- and two-resonator gates: the
// displacement amplitude B_k(t), the accumulated pair phase, the gate
// unitary at the decoupling times, GHZ targets, a perturbative fidelity
// estimate, the dc-SQUID coupler, and solvers for the phase conditions.

#ifndef GHZFORGE_ANALYTIC_HPP
#define GHZFORGE_ANALYTIC_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ghzforge/model.hpp"
#include "ghzforge/operators.hpp"

namespace ghzforge {

/// B_k(t) = (i g / 2 delta)(e^{i delta t} - 1).
Complex b_k(double t, double g, double delta);

/// gamma_kj(t) = (1/i) int_0^t B_k^*(s) dB_j(s)
///             = (g_k g_j / 4 delta) [t - (e^{i delta t} - 1) / (i delta)].
Complex gamma_kj(double t, double g_k, double g_j, double delta);

/// First decoupling time 2 pi n / |delta| (always positive).
double decoupling_time(double delta, int n);

/// exp(i sum_{k != j} phases(k, j) sigma_x^k sigma_x^j) on the qubit space.
/// `phases` must be symmetric with zero diagonal; the sum runs over ordered
/// pairs.
Operator pair_phase_unitary(const Eigen::MatrixXd& phases);

/// Qubit-sector propagator of the effective single-resonator Hamiltonian at
/// the decoupling time 2 pi n / |delta|. The pair phase is the signed value
/// n pi g_k g_j sign(delta) / (2 delta^2), and the propagator is
/// exp(+i sum_{k != j} phase sigma_x^k sigma_x^j).
Operator evolution_at_Tn(const std::vector<double>& g, double delta, int n);

/// Ordered-pair phase matrix of the two-resonator effective Hamiltonian at
/// T_n = 2 pi n / |J|. Same-resonator pairs carry
/// g_k g_j delta' T / (4 (delta'+J)(delta'-J)), cross pairs
/// -g_k g_j J T / (4 (delta'+J)(delta'-J)).
Eigen::MatrixXd gamma_total_coupled(const std::vector<double>& g,
                                    const std::vector<Resonator>& assignment,
                                    double delta_prime, double j, int n);

/// Qubit-sector propagator of the two-resonator effective Hamiltonian at T_n.
Operator evolution_coupled_at_Tn(const std::vector<double>& g,
                                 const std::vector<Resonator>& assignment, double delta_prime,
                                 double j, int n);

/// Relative phase of the |-...-> branch of the GHZ target. `Forward` uses
/// e^{i pi (N+1)/2}; `Conjugate` uses its complex conjugate (+i for N = 2).
enum class GhzPhase { Forward, Conjugate };

std::string to_string(GhzPhase phase);
Complex ghz_relative_phase(std::size_t n_qubits, GhzPhase phase);

/// (|+...+> + phase |-...->) / sqrt2 on N qubits.
StateVector ghz_target(std::size_t n_qubits, GhzPhase phase);

/// 1 - N(N-1) g^2 / (8 Omega^2) (1 - cos 2 Omega t), clipped to [0, 1].
double fidelity_estimate(std::size_t n_qubits, double g, double rabi, double t);

/// Amplitude N(N-1) g^2 / (8 Omega^2) of the cos(2 Omega t) term above.
double fidelity_estimate_amplitude(std::size_t n_qubits, double g, double rabi);

/// exp(-i sum_k Omega t sigma_x^k / 2).
Operator residual_local_rotation(double rabi, double t, std::size_t n_qubits);

/// dc-SQUID between two resonators. Inductances in pH, critical current in
/// uA, zero-point currents in nA.
class SquidCoupler {
 public:
  SquidCoupler(double self_inductance_ph, double critical_current_ua, double mutual_a_ph,
               double mutual_b_ph, int l_parity, double zero_point_a_na = 50.0,
               double zero_point_b_na = 50.0);

  /// 2 pi L_c I_c / Phi_0.
  double beta_l() const { return beta_l_; }
  int l_parity() const { return l_; }

  /// Signed effective mutual inductance in pH at external flux phi_e (in
  /// units of the flux quantum).
  double m_eff(double phi_e) const;
  /// J = M_eff I_A0 I_B0 / hbar in rad/ns.
  double j_coupling(double phi_e) const;
  /// (M_CA M_CB / L_c) beta_L / (2 - beta_L), the bound on |M_eff| in pH.
  double m_eff_bound() const;

 private:
  double lc_;
  double ic_;
  double mca_;
  double mcb_;
  int l_;
  double ia0_;
  double ib0_;
  double beta_l_;
};

struct SingleConditionSolution {
  double delta_positive;  ///< +g sqrt(4n/(1+2m))
  double delta_negative;
  double gate_time;       ///< 2 pi n / |delta|
  double pair_phase;      ///< (1+2m) pi / 8
  /// |n pi g^2 / (2 delta^2) - (1+2m) pi / 8|.
  double residual;
};

/// Detunings for which the pair phase at T_n is (1+2m) pi / 8.
SingleConditionSolution solve_single_condition(double g, int n, int m);

struct CoupledConditionSolution {
  double delta_prime;  ///< xi J
  double j;            ///< J > 0
  double gate_time;    ///< 2 pi n / J
  /// |g^2 delta' T/((delta'+J)(delta'-J)) - (3+4m) pi/2| and the cross
  /// condition with (1+4l) pi/2.
  double residual_same;
  double residual_cross;
};

/// Solves both phase conditions with delta' = xi J and T_n = 2 pi n / J.
/// Throws UnsolvableConditionError when xi (1+4l) != 3+4m or no positive J
/// exists.
CoupledConditionSolution solve_coupled_condition(double g, int xi, int n, int m, int l);

}  // namespace ghzforge

#endif  // GHZFORGE_ANALYTIC_HPP
