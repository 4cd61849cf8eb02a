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


#include "ghzforge/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ghzforge/errors.hpp"
#include "ghzforge/units.hpp"

namespace ghzforge {
namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero_detuning(double delta, const char* what) {
  if (delta == 0.0 || !std::isfinite(delta)) {
    throw PreconditionError(std::string(what) + ": detuning must be finite and nonzero");
  }
}

// sigma_x^k on an N-qubit space.
Operator sx_on(std::size_t k, const HilbertSpace& space) {
  return embed(pauli(Axis::X), space.qubit_factor(k), space);
}

}  // namespace

Complex b_k(double t, double g, double delta) {
  require_nonzero_detuning(delta, "b_k");
  return kI * g / (2.0 * delta) * (std::exp(kI * (delta * t)) - 1.0);
}

Complex gamma_kj(double t, double g_k, double g_j, double delta) {
  require_nonzero_detuning(delta, "gamma_kj");
  const Complex osc = (std::exp(kI * (delta * t)) - 1.0) / (kI * delta);
  return g_k * g_j / (4.0 * delta) * (t - osc);
}

double decoupling_time(double delta, int n) {
  require_nonzero_detuning(delta, "decoupling_time");
  if (n < 1) throw InputError("decoupling_time: n must be positive");
  return units::kTwoPi * n / std::abs(delta);
}

Operator pair_phase_unitary(const Eigen::MatrixXd& phases) {
  if (phases.rows() != phases.cols()) throw InputError("pair phase matrix must be square");
  const auto n = static_cast<std::size_t>(phases.rows());
  const HilbertSpace space = HilbertSpace::qubits(n);
  Operator generator = Operator::zero(space);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (k == j) continue;
      const auto ki = static_cast<Eigen::Index>(k);
      const auto ji = static_cast<Eigen::Index>(j);
      generator += phases(ki, ji) * (sx_on(k, space) * sx_on(j, space));
    }
  }
  return matrix_exponential(generator, kI);
}

Operator evolution_at_Tn(const std::vector<double>& g, double delta, int n) {
  const double t = decoupling_time(delta, n);
  const auto size = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd phases = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (k != j) phases(k, j) = g[k] * g[j] * t / (4.0 * delta);
    }
  }
  return pair_phase_unitary(phases);
}

Eigen::MatrixXd gamma_total_coupled(const std::vector<double>& g,
                                    const std::vector<Resonator>& assignment,
                                    double delta_prime, double j, int n) {
  if (g.size() != assignment.size()) {
    throw InputError("gamma_total_coupled: coupling and assignment lists differ in length");
  }
  const double denom = (delta_prime + j) * (delta_prime - j);
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw PreconditionError("gamma_total_coupled: |delta'| equals |J|");
  }
  if (j == 0.0) throw PreconditionError("gamma_total_coupled: J = 0 has no decoupling time");
  if (n < 1) throw InputError("gamma_total_coupled: n must be positive");
  const double t = units::kTwoPi * n / std::abs(j);
  const auto size = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd phases = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index i = 0; i < size; ++i) {
      if (k == i) continue;
      const double scale = assignment[k] == assignment[i] ? delta_prime : -j;
      phases(k, i) = 0.25 * g[k] * g[i] * scale * t / denom;
    }
  }
  return phases;
}

Operator evolution_coupled_at_Tn(const std::vector<double>& g,
                                 const std::vector<Resonator>& assignment, double delta_prime,
                                 double j, int n) {
  return pair_phase_unitary(gamma_total_coupled(g, assignment, delta_prime, j, n));
}

std::string to_string(GhzPhase phase) {
  return phase == GhzPhase::Forward ? "forward" : "conjugate";
}

Complex ghz_relative_phase(std::size_t n_qubits, GhzPhase phase) {
  const double angle = kPi * static_cast<double>(n_qubits + 1) / 2.0;
  const Complex forward = std::polar(1.0, angle);
  return phase == GhzPhase::Forward ? forward : std::conj(forward);
}

StateVector ghz_target(std::size_t n_qubits, GhzPhase phase) {
  if (n_qubits < 2) throw InputError("ghz_target: at least two qubits required");
  const HilbertSpace space = HilbertSpace::qubits(n_qubits);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  const double r = 1.0 / std::sqrt(2.0);
  // All-ground is the last index, all-excited the first.
  amps(amps.size() - 1) = r;
  amps(0) = r * ghz_relative_phase(n_qubits, phase);
  return {space, std::move(amps)};
}

double fidelity_estimate_amplitude(std::size_t n_qubits, double g, double rabi) {
  if (!(rabi > 0.0)) throw InputError("fidelity_estimate: Rabi amplitude must be positive");
  const double n = static_cast<double>(n_qubits);
  return n * (n - 1.0) * g * g / (8.0 * rabi * rabi);
}

double fidelity_estimate(std::size_t n_qubits, double g, double rabi, double t) {
  const double f =
      1.0 - fidelity_estimate_amplitude(n_qubits, g, rabi) * (1.0 - std::cos(2.0 * rabi * t));
  return std::clamp(f, 0.0, 1.0);
}

Operator residual_local_rotation(double rabi, double t, std::size_t n_qubits) {
  const HilbertSpace space = HilbertSpace::qubits(n_qubits);
  Operator generator = Operator::zero(space);
  for (std::size_t k = 0; k < n_qubits; ++k) generator += sx_on(k, space);
  return matrix_exponential(generator, -kI * (rabi * t / 2.0));
}

SquidCoupler::SquidCoupler(double self_inductance_ph, double critical_current_ua,
                           double mutual_a_ph, double mutual_b_ph, int l_parity,
                           double zero_point_a_na, double zero_point_b_na)
    : lc_(self_inductance_ph),
      ic_(critical_current_ua),
      mca_(mutual_a_ph),
      mcb_(mutual_b_ph),
      l_(l_parity),
      ia0_(zero_point_a_na),
      ib0_(zero_point_b_na) {
  if (!(lc_ > 0.0) || !std::isfinite(lc_)) throw InputError("coupler: L_c must be positive");
  if (!(ic_ >= 0.0) || !std::isfinite(ic_)) throw InputError("coupler: I_c must be non-negative");
  if (!std::isfinite(mca_) || !std::isfinite(mcb_)) {
    throw InputError("coupler: mutual inductances must be finite");
  }
  if (!(ia0_ >= 0.0) || !(ib0_ >= 0.0)) {
    throw InputError("coupler: zero-point currents must be non-negative");
  }
  beta_l_ = units::kTwoPi * (lc_ * units::kPicohenry) * (ic_ * units::kMicroampere) /
            units::kFluxQuantum;
  if (!(beta_l_ < 1.0)) {
    throw InputError("coupler: screening parameter beta_L = " + std::to_string(beta_l_) +
                     " must be below 1 for the nonhysteretic regime");
  }
}

double SquidCoupler::m_eff(double phi_e) const {
  const double c = beta_l_ * std::cos(kPi * l_ - kPi * phi_e);
  return -(mca_ * mcb_ / lc_) * c / (2.0 + c);
}

double SquidCoupler::j_coupling(double phi_e) const {
  const double energy =
      m_eff(phi_e) * units::kPicohenry * (ia0_ * units::kNanoampere) * (ib0_ * units::kNanoampere);
  return units::joule_to_angular(energy);
}

double SquidCoupler::m_eff_bound() const {
  return std::abs(mca_ * mcb_ / lc_) * beta_l_ / (2.0 - beta_l_);
}

SingleConditionSolution solve_single_condition(double g, int n, int m) {
  if (!(g > 0.0) || !std::isfinite(g)) throw InputError("solve_single: g must be positive");
  if (n < 1) throw InputError("solve_single: n must be at least 1");
  const int odd = 1 + 2 * m;
  if (odd <= 0) {
    throw UnsolvableConditionError("solve_single: 1 + 2m = " + std::to_string(odd) +
                                   " must be positive for a real detuning");
  }
  SingleConditionSolution s{};
  s.delta_positive = g * std::sqrt(4.0 * n / odd);
  s.delta_negative = -s.delta_positive;
  s.gate_time = units::kTwoPi * n / s.delta_positive;
  s.pair_phase = odd * kPi / 8.0;
  s.residual =
      std::abs(n * kPi * g * g / (2.0 * s.delta_positive * s.delta_positive) - s.pair_phase);
  return s;
}

CoupledConditionSolution solve_coupled_condition(double g, int xi, int n, int m, int l) {
  if (!(g > 0.0) || !std::isfinite(g)) throw InputError("solve_coupled: g must be positive");
  if (n < 1) throw InputError("solve_coupled: n must be at least 1");
  if (xi % 2 == 0) {
    throw UnsolvableConditionError("solve_coupled: xi = " + std::to_string(xi) + " must be odd");
  }
  if (xi == 1 || xi == -1) {
    throw UnsolvableConditionError("solve_coupled: |xi| = 1 makes a normal mode resonant");
  }
  const long same = 3 + 4L * m;
  const long cross = 1 + 4L * l;
  if (static_cast<long>(xi) * cross != same) {
    throw UnsolvableConditionError("solve_coupled: ratio constraint xi = (3+4m)/(1+4l) violated: " +
                                   std::to_string(same) + "/" + std::to_string(cross) +
                                   " != " + std::to_string(xi));
  }
  const double denom = static_cast<double>(cross) * (static_cast<double>(xi) * xi - 1.0);
  if (!(denom > 0.0)) {
    throw UnsolvableConditionError("solve_coupled: (1+4l)(xi^2-1) = " + std::to_string(denom) +
                                   " must be positive for a real J");
  }
  CoupledConditionSolution s{};
  s.j = g * std::sqrt(4.0 * n / denom);
  s.delta_prime = xi * s.j;
  s.gate_time = units::kTwoPi * n / s.j;
  const double shared = g * g * s.gate_time / ((s.delta_prime + s.j) * (s.delta_prime - s.j));
  s.residual_same = std::abs(shared * s.delta_prime - same * kPi / 2.0);
  s.residual_cross = std::abs(shared * s.j - cross * kPi / 2.0);
  return s;
}

}  // namespace ghzforge
