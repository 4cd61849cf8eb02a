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


#include "ghzforge/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "ghzforge/analytic.hpp"
#include "ghzforge/dynamics.hpp"
#include "ghzforge/errors.hpp"
#include "ghzforge/model.hpp"
#include "ghzforge/units.hpp"

namespace ghzforge {
namespace {

using units::ghz_to_angular;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

Outcome within(double value, double tol, const std::string& what) {
  return {value <= tol, what + " = " + sci(value) + " (tol " + sci(tol) + ")"};
}

SingleTlrCircuit reference_single(double rabi_multiple = 20.0) {
  SingleTlrCircuit c;
  c.resonator_frequency = ghz_to_angular(10.0);
  c.drive_frequency = ghz_to_angular(10.1);
  for (int k = 0; k < 2; ++k) {
    QubitSpec q;
    q.gap = c.drive_frequency;
    q.coupling = ghz_to_angular(0.05);
    c.qubits.push_back(q);
  }
  c.rabi = rabi_multiple * std::abs(c.detuning());
  return c;
}

Matrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (m + m.adjoint());
}

Outcome check_pauli(bool fault) {
  const Operator x = pauli(Axis::X);
  const Operator y = fault ? -1.0 * pauli(Axis::Y) : pauli(Axis::Y);
  const Operator z = pauli(Axis::Z);
  const double sq = max_abs_difference(x * x, Operator::identity(x.space()));
  const double alg = max_abs_difference(commutator(x, y), Complex(0.0, 2.0) * z);
  return within(std::max(sq, alg), 1e-15, "max Pauli algebra defect");
}

Outcome check_ladder() {
  const std::size_t n = 6;
  const Operator a = annihilation(n);
  const Operator c = commutator(a, a.adjoint());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const Complex expect = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(c.matrix()(static_cast<Eigen::Index>(i),
                                                  static_cast<Eigen::Index>(j)) -
                                       expect));
    }
  }
  return within(worst, 1e-14, "[a, a^dag] - I below the top level");
}

Outcome check_expm(std::size_t dim) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Operator h(HilbertSpace(0, {dim}), random_hermitian(dim, rng));
    worst = std::max(worst, matrix_exponential(h, Complex(0.0, -0.7)).unitarity_defect());
  }
  return within(worst, 1e-9, "max unitarity defect of exp(-iH)");
}

Outcome check_partial_trace() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  const HilbertSpace space(2, {4});
  Vector v(static_cast<Eigen::Index>(space.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  v.normalize();
  const DensityMatrix rho = partial_trace_modes(StateVector(space, v));
  const StateVector ghz = ghz_target(2, GhzPhase::Forward);
  const HilbertSpace with_mode(2, {3});
  Vector joint = Vector::Zero(static_cast<Eigen::Index>(with_mode.dim()));
  for (Eigen::Index q = 0; q < 4; ++q) joint(q * 3) = ghz.amplitudes()(q);
  const double purity = partial_trace_modes(StateVector(with_mode, joint)).purity();
  return within(std::max(std::abs(rho.trace() - 1.0), std::abs(purity - 1.0)), 1e-10,
                "trace / purity defect");
}

Outcome check_coherent_state() {
  const Complex beta(0.3, 0.4);
  const std::size_t n_max = 16;
  const Vector psi = displacement(beta, n_max).matrix().col(0);
  double worst = 0.0;
  double factorial = 1.0;
  for (std::size_t n = 0; n < 8; ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    const Complex expect =
        std::exp(-std::norm(beta) / 2.0) * std::pow(beta, static_cast<double>(n)) / std::sqrt(factorial);
    worst = std::max(worst, std::abs(psi(static_cast<Eigen::Index>(n)) - expect));
  }
  return within(worst, 1e-9, "coherent-state amplitude error");
}

Outcome check_bk_zeros() {
  double worst = 0.0;
  for (double delta : {ghz_to_angular(0.1), -ghz_to_angular(0.1), 1.7}) {
    for (int n = 1; n <= 10; ++n) {
      worst = std::max(worst, std::abs(b_k(decoupling_time(delta, n), ghz_to_angular(0.05), delta)));
    }
  }
  return within(worst, 1e-13, "max |B_k(T_n)|");
}

// Simpson rule for (1/i) int_0^t B_k^* dB_j with dB_j/ds = -(g_j/2) e^{i delta s}.
Complex gamma_quadrature(double t, double gk, double gj, double delta, std::size_t steps) {
  const double h = t / static_cast<double>(steps);
  auto f = [&](double s) {
    const Complex bk = kI * gk / (2.0 * delta) * (std::exp(kI * (delta * s)) - 1.0);
    const Complex dbj = -(gj / 2.0) * std::exp(kI * (delta * s));
    return std::conj(bk) * dbj / kI;
  };
  Complex acc = f(0.0) + f(t);
  for (std::size_t i = 1; i < steps; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
  }
  return acc * h / 3.0;
}

Outcome check_gamma(std::size_t tuples, bool fault) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> g_dist(0.05, 0.6);
  std::uniform_real_distribution<double> d_dist(0.2, 2.0);
  std::uniform_real_distribution<double> t_dist(0.0, 20.0);
  std::bernoulli_distribution sign;
  double worst = 0.0;
  for (std::size_t i = 0; i < tuples; ++i) {
    const double gk = g_dist(rng);
    const double gj = g_dist(rng);
    const double delta = sign(rng) ? d_dist(rng) : -d_dist(rng);
    const double t = t_dist(rng);
    const Complex closed = gamma_kj(t, fault ? gk * 1.001 : gk, gj, delta);
    worst = std::max(worst, std::abs(closed - gamma_quadrature(t, gk, gj, delta, 100000)));
  }
  return within(worst, 1e-9, "max |closed form - quadrature|");
}

Outcome check_solvers() {
  const double g = ghz_to_angular(0.05);
  const SingleConditionSolution s = solve_single_condition(g, 1, 0);
  const CoupledConditionSolution c = solve_coupled_condition(ghz_to_angular(0.04) * std::sqrt(2.0), 3, 1, 0, 0);
  const double worst = std::max({s.residual, c.residual_same, c.residual_cross,
                                 std::abs(s.gate_time - 10.0), std::abs(c.gate_time - 25.0)});
  return within(worst, 1e-10, "max solver residual");
}

Outcome check_gate_unitary() {
  const std::vector<double> g(3, ghz_to_angular(0.05));
  const Operator u = evolution_at_Tn(g, -2.0 * g[0], 1);
  // Conjugate into the sigma_x product basis; the result must be diagonal.
  const HilbertSpace space = HilbertSpace::qubits(3);
  const Operator h1(HilbertSpace::qubits(1),
                    (Matrix(2, 2) << 1, 1, 1, -1).finished() / std::sqrt(2.0));
  Operator hadamard = Operator::identity(space);
  for (std::size_t k = 0; k < 3; ++k) hadamard = hadamard * embed(h1, k, space);
  Matrix d = hadamard.matrix().adjoint() * u.matrix() * hadamard.matrix();
  d.diagonal().setZero();
  return within(std::max(u.unitarity_defect(), d.cwiseAbs().maxCoeff()), 1e-12,
                "unitarity / off-diagonal defect");
}

Outcome check_exact_phase() {
  const std::size_t n_max = 6;
  const HilbertSpace space(0, {n_max});
  const double w = 1.3;
  TimeDependentHamiltonian h(space, "oscillator", 0.0);
  h.add(0.0, w * number(n_max));
  Vector psi = Vector::Constant(static_cast<Eigen::Index>(n_max), 1.0 / std::sqrt(double(n_max)));
  const double t = 5.0;
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  evolve(h, psi, t, cfg, {}, nullptr);
  double worst = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const Complex expect = std::exp(-kI * (w * t * static_cast<double>(n))) / std::sqrt(double(n_max));
    worst = std::max(worst, std::abs(psi(static_cast<Eigen::Index>(n)) - expect));
  }
  return within(worst, 1e-9, "max amplitude error vs exact propagator");
}

Outcome check_rk4_order() {
  const SingleTlrCircuit c = reference_single();
  const TimeDependentHamiltonian h = h_full_sim_single(c, HilbertSpace(2, {6}));
  const Vector psi0 = initial_state(h.space()).amplitudes();
  auto run = [&](double dt) {
    Vector psi = psi0;
    IntegratorConfig cfg;
    cfg.dt = dt;
    evolve(h, psi, 0.5, cfg, {}, nullptr);
    return psi;
  };
  const double dt = max_step(h);
  const Vector ref = run(dt / 16.0);
  const double e1 = (run(dt) - ref).norm();
  const double e2 = (run(dt / 2.0) - ref).norm();
  const double ratio = e1 / e2;
  return {ratio >= 12.0, "error ratio on halving dt = " + std::to_string(ratio) + " (need >= 12)"};
}

Outcome check_closure(bool fault) {
  SingleTlrCircuit c = reference_single();
  c.resonator_frequency = c.drive_frequency - 2.0 * c.qubits[0].coupling;
  const TimeDependentHamiltonian h = h_eff_final(c, HilbertSpace(2, {10}));
  Vector psi = initial_state(h.space()).amplitudes();
  const double t = decoupling_time(c.detuning(), 1);
  evolve(h, psi, t, {}, {}, nullptr);
  const std::vector<double> g = {c.qubits[0].coupling, c.qubits[1].coupling};
  const Operator u = evolution_at_Tn(g, fault ? -c.detuning() : c.detuning(), 1);
  Vector plus = Vector::Zero(4);
  plus(3) = 1.0;
  const Vector target = u.matrix() * plus;
  const double f = fidelity_vs_ghz(h.space(), psi, target);
  return {f >= 0.9999, "state fidelity with closed-form gate = " + std::to_string(f)};
}

Outcome check_truncation() {
  const SingleTlrCircuit c = reference_single();
  SamplePlan plan;
  plan.every = 10.0;
  const double f8 = run_scenario_single(c, SingleVariant::Full, 8, 10.0, {}, plan).final_fidelity();
  const double f12 = run_scenario_single(c, SingleVariant::Full, 12, 10.0, {}, plan).final_fidelity();
  return within(std::abs(f8 - f12), 1e-4, "|F(n_max=8) - F(n_max=12)|");
}

Outcome check_norm_drift() {
  const SingleTlrCircuit c = reference_single();
  SamplePlan plan;
  plan.every = 0.5;
  const Trajectory tr = run_scenario_single(c, SingleVariant::Full, 10, 10.0, {}, plan);
  return within(tr.max_norm_drift(), 1e-8, "max norm drift over 10 ns");
}

Outcome check_coupler(bool fault) {
  const SquidCoupler coupler(200.0, 1.5, 60.0, 60.0, 0);
  const double hbar = units::kReducedPlanck * (fault ? 1.001 : 1.0);
  // Independent recomputation of J from M_eff in SI.
  const double j_si = coupler.m_eff(0.0) * 1e-12 * 50e-9 * 50e-9 / hbar * 1e-9;
  const double rel = std::abs(coupler.j_coupling(0.0) - j_si) / std::abs(j_si);
  const double periodic = std::abs(coupler.m_eff(0.3) - coupler.m_eff(2.3));
  const bool bounded = std::abs(coupler.m_eff(0.0)) <= coupler.m_eff_bound() * (1 + 1e-12);
  Outcome o = within(std::max(rel, periodic), 1e-12, "J conversion / periodicity defect");
  if (!bounded) o = {false, "|M_eff| exceeds its bound"};
  if (!(coupler.beta_l() < 1.0)) o = {false, "beta_L >= 1"};
  return o;
}

}  // namespace

std::vector<std::string> selftest_fault_names() {
  return {"pauli-y-sign", "gamma-prefactor", "gate-sign", "hbar"};
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const std::string& fault = options.inject_fault;
  if (!fault.empty()) {
    const auto names = selftest_fault_names();
    if (std::find(names.begin(), names.end(), fault) == names.end()) {
      throw InputError("unknown fault '" + fault + "'");
    }
  }
  struct Entry {
    std::string name;
    bool quick;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"pauli algebra", true, [&] { return check_pauli(fault == "pauli-y-sign"); }},
      {"ladder commutator", true, [] { return check_ladder(); }},
      {"matrix exponential unitarity", true,
       [&] { return check_expm(options.quick ? 16 : 64); }},
      {"partial trace", true, [] { return check_partial_trace(); }},
      {"coherent state", true, [] { return check_coherent_state(); }},
      {"B_k decoupling zeros", true, [] { return check_bk_zeros(); }},
      {"gamma closed form vs quadrature", true,
       [&] { return check_gamma(options.quick ? 5 : 50, fault == "gamma-prefactor"); }},
      {"condition solvers", true, [] { return check_solvers(); }},
      {"gate unitary structure", true, [] { return check_gate_unitary(); }},
      {"coupler conversion", true, [&] { return check_coupler(fault == "hbar"); }},
      {"integrator exact phase", true, [] { return check_exact_phase(); }},
      {"gate closure", true, [&] { return check_closure(fault == "gate-sign"); }},
      {"integrator order", false, [] { return check_rk4_order(); }},
      {"norm drift", false, [] { return check_norm_drift(); }},
      {"truncation convergence", false, [] { return check_truncation(); }},
  };
  std::vector<CheckResult> results;
  ScopedWarningCapture quiet;
  for (const auto& e : entries) {
    if (options.quick && !e.quick) continue;
    CheckResult r;
    r.name = e.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = e.run();
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("threw: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(r);
  }
  return results;
}

}  // namespace ghzforge
