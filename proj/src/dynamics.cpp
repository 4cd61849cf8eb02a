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


#include "ghzforge/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ghzforge/errors.hpp"
#include "ghzforge/units.hpp"

namespace ghzforge {
namespace {

std::size_t stride_for(double every, double dt) {
  if (!(every > 0.0)) return std::numeric_limits<std::size_t>::max();
  const double ratio = std::floor(every / dt + 1e-9);
  return ratio < 1.0 ? 1 : static_cast<std::size_t>(ratio);
}

Eigen::MatrixXd trend_design(const std::vector<double>& t, double center, double half_width,
                             const std::vector<double>& frequencies) {
  const auto rows = static_cast<Eigen::Index>(t.size());
  const auto cols = static_cast<Eigen::Index>(3 + 2 * frequencies.size());
  Eigen::MatrixXd a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double ti = t[static_cast<std::size_t>(i)];
    const double x = (ti - center) / half_width;
    a(i, 0) = 1.0;
    a(i, 1) = x;
    a(i, 2) = x * x;
    for (std::size_t f = 0; f < frequencies.size(); ++f) {
      a(i, 3 + 2 * static_cast<Eigen::Index>(f)) = std::cos(frequencies[f] * ti);
      a(i, 4 + 2 * static_cast<Eigen::Index>(f)) = std::sin(frequencies[f] * ti);
    }
  }
  return a;
}

struct Window {
  std::vector<double> t;
  Eigen::VectorXd y;
};

Window select_window(const std::vector<double>& times, const std::vector<double>& values,
                     double t0, double t1) {
  if (times.size() != values.size()) throw InputError("spectral fit: length mismatch");
  Window w;
  std::vector<double> y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t0 - 1e-12 && times[i] <= t1 + 1e-12) {
      w.t.push_back(times[i]);
      y.push_back(values[i]);
    }
  }
  w.y = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  return w;
}

std::vector<double> fit_amplitudes(const Window& w, double t0, double t1,
                                   const std::vector<double>& frequencies) {
  if (w.t.size() < 3 + 2 * frequencies.size() + 1) {
    throw InputError("spectral fit: too few samples in window");
  }
  const Eigen::MatrixXd a = trend_design(w.t, 0.5 * (t0 + t1), 0.5 * (t1 - t0), frequencies);
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(w.y);
  std::vector<double> amps;
  for (std::size_t f = 0; f < frequencies.size(); ++f) {
    const auto i = 3 + 2 * static_cast<Eigen::Index>(f);
    amps.push_back(std::hypot(c(i), c(i + 1)));
  }
  return amps;
}

// Drop in the residual sum of squares when a harmonic at `freq` joins the
// trend. Bounded by the window variance, unlike the fitted amplitude, which
// blows up where the harmonic is nearly collinear with the trend.
double explained_power(const Window& w, double t0, double t1, double freq,
                       double trend_residual) {
  const Eigen::MatrixXd a = trend_design(w.t, 0.5 * (t0 + t1), 0.5 * (t1 - t0), {freq});
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(w.y);
  return trend_residual - (w.y - a * c).squaredNorm();
}

}  // namespace

double default_step(const TimeDependentHamiltonian& h) {
  const double w = h.fastest_frequency();
  if (!(w > 0.0)) throw PreconditionError(h.label() + ": no fastest frequency declared");
  return units::kTwoPi / w / kDefaultStepsPerPeriod;
}

double max_step(const TimeDependentHamiltonian& h) {
  const double w = h.fastest_frequency();
  if (!(w > 0.0)) return std::numeric_limits<double>::infinity();
  return units::kTwoPi / w / kMinStepsPerPeriod;
}

StateVector initial_state(const HilbertSpace& space) {
  // Ground is qubit index 1 on every qubit, so the all-ground qubit index is
  // qubit_dim - 1; vacuum is mode index 0.
  return StateVector::basis(space, (space.qubit_dim() - 1) * space.mode_dim());
}

EvolveStats evolve(const TimeDependentHamiltonian& h, Vector& psi, double t_final,
                   const IntegratorConfig& cfg, const SamplePlan& plan, const Observer& observer) {
  if (static_cast<std::size_t>(psi.size()) != h.space().dim()) {
    throw InputError("evolve: state dimension does not match Hamiltonian space");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw InputError("evolve: final time must be non-negative");
  }
  if (cfg.dt < 0.0 || !std::isfinite(cfg.dt)) throw InputError("evolve: dt must be positive");
  const double requested = cfg.dt == 0.0 ? default_step(h) : cfg.dt;
  if (requested > max_step(h) * (1.0 + 1e-12)) {
    throw PreconditionError("evolve: dt = " + std::to_string(requested) + " ns exceeds " +
                            std::to_string(max_step(h)) + " ns (1/" +
                            std::to_string(static_cast<int>(kMinStepsPerPeriod)) +
                            " of the fastest period) for '" + h.label() + "'");
  }
  EvolveStats stats;
  stats.steps = t_final == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(t_final / requested - 1e-9));
  stats.dt = stats.steps == 0 ? requested : t_final / static_cast<double>(stats.steps);
  const double dt = stats.dt;
  const std::size_t stride = stride_for(plan.every, dt);
  const std::size_t window_stride = plan.has_window() ? stride_for(plan.window_every, dt) : 0;

  auto sample = [&](std::size_t k) {
    if (!observer) return;
    if (k == 0 || k == stats.steps || k % stride == 0) {
      observer(static_cast<double>(k) * dt, psi);
      return;
    }
    if (window_stride != 0 && k % window_stride == 0) {
      const double t = static_cast<double>(k) * dt;
      if (t >= plan.window_begin - 1e-12 && t <= plan.window_end + 1e-12) observer(t, psi);
    }
  };

  const auto n = psi.size();
  Vector k1(n), k2(n), k3(n), k4(n), tmp(n), scratch(n);
  const Complex minus_i = -kI;
  sample(0);
  for (std::size_t step = 0; step < stats.steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    h.apply(t, psi, k1, scratch);
    k1 *= minus_i;
    tmp = psi + (0.5 * dt) * k1;
    h.apply(t + 0.5 * dt, tmp, k2, scratch);
    k2 *= minus_i;
    tmp = psi + (0.5 * dt) * k2;
    h.apply(t + 0.5 * dt, tmp, k3, scratch);
    k3 *= minus_i;
    tmp = psi + dt * k3;
    h.apply(t + dt, tmp, k4, scratch);
    k4 *= minus_i;
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (cfg.renormalize_every != 0 && (step + 1) % cfg.renormalize_every == 0) psi.normalize();
    sample(step + 1);
  }
  return stats;
}

double fidelity_vs_ghz(const HilbertSpace& space, const Vector& psi, const Vector& target) {
  if (static_cast<std::size_t>(target.size()) != space.qubit_dim()) {
    throw InputError("fidelity: target dimension does not match qubit sector");
  }
  const Matrix rho = reduced_qubit_matrix(space, psi);
  return target.dot(rho * target).real();
}

double fidelity_vs_ghz(const StateVector& psi, const StateVector& target) {
  if (!(psi.space().qubit_space() == target.space())) {
    throw InputError("fidelity: target space " + target.space().describe() +
                     " does not match qubits of " + psi.space().describe());
  }
  return fidelity_vs_ghz(psi.space(), psi.amplitudes(), target.amplitudes());
}

double Trajectory::max_norm_drift() const {
  double drift = 0.0;
  for (double v : norm) drift = std::max(drift, std::abs(v - 1.0));
  return drift;
}

std::size_t Trajectory::peak_index(double t0, double t1) const {
  std::size_t best = times.size();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 - 1e-12 || times[i] > t1 + 1e-12) continue;
    if (best == times.size() || fidelity[i] > fidelity[best]) best = i;
  }
  if (best == times.size()) throw InputError("peak_index: no samples in window");
  return best;
}

Trajectory run_trajectory(const TimeDependentHamiltonian& h, double t_final,
                          const IntegratorConfig& cfg, const SamplePlan& plan) {
  const HilbertSpace& space = h.space();
  const std::size_t nq = space.qubit_count();
  const Vector forward = ghz_target(nq, GhzPhase::Forward).amplitudes();
  const Vector conjugate = ghz_target(nq, GhzPhase::Conjugate).amplitudes();
  Trajectory traj;
  traj.label = h.label();
  traj.space = space;
  traj.mode_occupation.resize(space.mode_count());
  Vector psi = initial_state(space).amplitudes();
  traj.stats = evolve(h, psi, t_final, cfg, plan, [&](double t, const Vector& state) {
    const Matrix rho = reduced_qubit_matrix(space, state);
    const double ff = forward.dot(rho * forward).real();
    const double fc = conjugate.dot(rho * conjugate).real();
    traj.times.push_back(t);
    traj.fidelity_forward.push_back(ff);
    traj.fidelity_conjugate.push_back(fc);
    traj.fidelity.push_back(std::max(ff, fc));
    traj.norm.push_back(state.norm());
    for (std::size_t m = 0; m < space.mode_count(); ++m) {
      traj.mode_occupation[m].push_back(mean_occupation(space, state, m));
    }
  });
  traj.convention = traj.fidelity_forward.back() >= traj.fidelity_conjugate.back()
                        ? GhzPhase::Forward
                        : GhzPhase::Conjugate;
  traj.final_state = std::move(psi);
  return traj;
}

std::string to_string(SingleVariant v) {
  switch (v) {
    case SingleVariant::Full:
      return "full";
    case SingleVariant::Intermediate:
      return "intermediate";
    case SingleVariant::Effective:
      return "effective";
  }
  return "unknown";
}

std::string to_string(CoupledVariant v) {
  return v == CoupledVariant::Full ? "full" : "effective";
}

TimeDependentHamiltonian build_single(const SingleTlrCircuit& circuit, SingleVariant variant,
                                      std::size_t n_max) {
  const HilbertSpace space(circuit.qubit_count(), {n_max});
  switch (variant) {
    case SingleVariant::Full:
      return h_full_sim_single(circuit, space);
    case SingleVariant::Intermediate:
      return h_eff_intermediate(circuit, space);
    case SingleVariant::Effective:
      return h_eff_final(circuit, space);
  }
  throw InputError("unknown single-resonator variant");
}

TimeDependentHamiltonian build_coupled(const CoupledTlrCircuit& circuit, CoupledVariant variant,
                                       std::size_t n_max) {
  const HilbertSpace space(circuit.qubit_count(), {n_max, n_max});
  return variant == CoupledVariant::Full ? h_full_sim_coupled(circuit, space)
                                         : h_eff_coupled(circuit, space);
}

Trajectory run_scenario_single(const SingleTlrCircuit& circuit, SingleVariant variant,
                               std::size_t n_max, double t_final, const IntegratorConfig& cfg,
                               const SamplePlan& plan) {
  return run_trajectory(build_single(circuit, variant, n_max), t_final, cfg, plan);
}

Trajectory run_scenario_coupled(const CoupledTlrCircuit& circuit, CoupledVariant variant,
                                std::size_t n_max, double t_final, const IntegratorConfig& cfg,
                                const SamplePlan& plan) {
  return run_trajectory(build_coupled(circuit, variant, n_max), t_final, cfg, plan);
}

std::size_t worker_count() {
  if (const char* env = std::getenv("GHZFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
    warn("GHZFORGE_THREADS='" + std::string(env) + "' is not a positive integer; ignored");
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = worker_count();
  workers = std::min(workers, count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Trajectory> sweep_drive_strength(const SingleTlrCircuit& circuit,
                                             SingleVariant variant,
                                             const std::vector<double>& multipliers,
                                             std::size_t n_max, double t_final,
                                             const IntegratorConfig& cfg, const SamplePlan& plan,
                                             std::size_t workers) {
  std::vector<Trajectory> out(multipliers.size());
  parallel_for(multipliers.size(), workers, [&](std::size_t i) {
    SingleTlrCircuit c = circuit;
    c.rabi = multipliers[i] * std::abs(c.detuning());
    for (auto& q : c.qubits) q.rabi.reset();
    out[i] = run_scenario_single(c, variant, n_max, t_final, cfg, plan);
  });
  return out;
}

std::vector<Trajectory> sweep_drive_strength(const CoupledTlrCircuit& circuit,
                                             CoupledVariant variant,
                                             const std::vector<double>& multipliers,
                                             std::size_t n_max, double t_final,
                                             const IntegratorConfig& cfg, const SamplePlan& plan,
                                             std::size_t workers) {
  std::vector<Trajectory> out(multipliers.size());
  parallel_for(multipliers.size(), workers, [&](std::size_t i) {
    CoupledTlrCircuit c = circuit;
    c.rabi = multipliers[i] * std::abs(c.resonator_coupling);
    for (auto& q : c.qubits) q.rabi.reset();
    out[i] = run_scenario_coupled(c, variant, n_max, t_final, cfg, plan);
  });
  return out;
}

std::vector<double> harmonic_amplitudes(const std::vector<double>& times,
                                        const std::vector<double>& values, double t0, double t1,
                                        const std::vector<double>& frequencies) {
  if (!(t1 > t0)) throw InputError("harmonic_amplitudes: empty window");
  return fit_amplitudes(select_window(times, values, t0, t1), t0, t1, frequencies);
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values,
                          double t0, double t1, double w_lo, double w_hi) {
  if (!(t1 > t0) || !(w_hi > w_lo) || !(w_lo > 0.0)) {
    throw InputError("dominant_frequency: bad window or band");
  }
  const Window w = select_window(times, values, t0, t1);
  if (w.t.size() < 6) throw InputError("spectral fit: too few samples in window");
  const Eigen::MatrixXd trend = trend_design(w.t, 0.5 * (t0 + t1), 0.5 * (t1 - t0), {});
  const double trend_residual =
      (w.y - trend * trend.colPivHouseholderQr().solve(w.y)).squaredNorm();
  auto power = [&](double freq) { return explained_power(w, t0, t1, freq, trend_residual); };
  // Grid fine enough to resolve peaks of width ~ 2 pi / (t1 - t0).
  const double resolution = units::kTwoPi / (t1 - t0) / 8.0;
  const auto points = static_cast<std::size_t>(std::ceil((w_hi - w_lo) / resolution)) + 1;
  const double step = (w_hi - w_lo) / static_cast<double>(points - 1);
  double best_w = w_lo;
  double best_p = -1.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double f = w_lo + step * static_cast<double>(i);
    const double p = power(f);
    if (p > best_p) {
      best_p = p;
      best_w = f;
    }
  }
  double a = std::max(w_lo, best_w - step);
  double b = std::min(w_hi, best_w + step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double pc = power(c);
  double pd = power(d);
  for (int it = 0; it < 60 && b - a > 1e-10 * best_w; ++it) {
    if (pc > pd) {
      b = d;
      d = c;
      pd = pc;
      c = b - ratio * (b - a);
      pc = power(c);
    } else {
      a = c;
      c = d;
      pc = pd;
      d = a + ratio * (b - a);
      pd = power(d);
    }
  }
  return 0.5 * (a + b);
}

FrameConsistencyReport frame_consistency(const SingleTlrCircuit& circuit,
                                         const ResonatorDrive& drive, std::size_t n_max,
                                         double t_final, const IntegratorConfig& cfg) {
  const DisplacementReport disp = displace_to_qubit_drive(circuit, drive);
  const SingleTlrCircuit& c = disp.circuit;
  const HilbertSpace space(c.qubit_count(), {n_max});
  const double delta = c.detuning();
  auto beta = [&](double t) { return -drive.amplitude * std::exp(-kI * (drive.frequency * t)) / delta; };
  auto displace = [&](Complex b) {
    return embed(displacement(b, n_max), space.mode_factor(0), space);
  };
  const Operator w = persistent_to_energy_basis(space);
  const Vector ground = initial_state(space).amplitudes();

  Vector lab = w.matrix() * (displace(beta(0.0)).matrix() * ground);
  const TimeDependentHamiltonian h_lab = h_lab_single(c, drive, space);
  evolve(h_lab, lab, t_final, cfg, {}, nullptr);

  Operator frame_generator = embed(number(n_max), space.mode_factor(0), space);
  for (std::size_t k = 0; k < c.qubit_count(); ++k) {
    frame_generator += 0.5 * embed(pauli(Axis::Z), space.qubit_factor(k), space);
  }
  const Operator to_rotating =
      matrix_exponential(frame_generator, kI * (drive.frequency * t_final));
  const Vector mapped =
      to_rotating.matrix() * (displace(-beta(t_final)).matrix() * (w.matrix().adjoint() * lab));

  Vector rot = ground;
  const TimeDependentHamiltonian h_rot = h_full_sim_single(c, space);
  evolve(h_rot, rot, t_final, cfg, {}, nullptr);

  FrameConsistencyReport report;
  report.t_final = t_final;
  report.rabi = c.rabi;
  report.overlap = std::abs(rot.dot(mapped));
  report.state_distance = std::sqrt(std::max(0.0, mapped.squaredNorm() + rot.squaredNorm() -
                                                      2.0 * report.overlap));
  return report;
}

}  // namespace ghzforge
