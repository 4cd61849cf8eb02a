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


// Fixed-step RK4 integration of the Schrodinger equation, GHZ fidelity
// tracking, scenario runners and drive-strength sweeps.

#ifndef GHZFORGE_DYNAMICS_HPP
#define GHZFORGE_DYNAMICS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghzforge/analytic.hpp"
#include "ghzforge/model.hpp"
#include "ghzforge/operators.hpp"

namespace ghzforge {

/// Default steps per period of the fastest declared frequency.
inline constexpr double kDefaultStepsPerPeriod = 128.0;
/// Coarsest step allowed: this many steps per fastest period.
inline constexpr double kMinStepsPerPeriod = 50.0;

struct IntegratorConfig {
  /// Step in ns; 0 selects the default for the Hamiltonian being integrated.
  double dt = 0.0;
  /// Renormalize the state every this many steps; 0 never.
  std::size_t renormalize_every = 0;
};

double default_step(const TimeDependentHamiltonian& h);
double max_step(const TimeDependentHamiltonian& h);

/// All qubits in the ground state |+>, every mode in vacuum.
StateVector initial_state(const HilbertSpace& space);

/// Output cadence. Samples fall on the integration grid; t = 0 and t_final
/// are always included.
struct SamplePlan {
  double every = 0.1;  ///< ns
  /// Optional dense window [window_begin, window_end] sampled every
  /// `window_every` ns.
  double window_begin = 0.0;
  double window_end = 0.0;
  double window_every = 0.0;

  bool has_window() const { return window_every > 0.0 && window_end > window_begin; }
};

using Observer = std::function<void(double t, const Vector& psi)>;

struct EvolveStats {
  double dt = 0.0;  ///< step actually used (t_final / steps)
  std::size_t steps = 0;
};

/// Integrates i d psi/dt = H(t) psi from t = 0 to `t_final` in place, calling
/// `observer` at each sample time. Throws PreconditionError when the step is
/// coarser than max_step(h).
EvolveStats evolve(const TimeDependentHamiltonian& h, Vector& psi, double t_final,
                   const IntegratorConfig& cfg, const SamplePlan& plan, const Observer& observer);

/// <target| Tr_modes |psi><psi| |target>.
double fidelity_vs_ghz(const StateVector& psi, const StateVector& target);
double fidelity_vs_ghz(const HilbertSpace& space, const Vector& psi, const Vector& target);

struct Trajectory {
  std::string label;
  std::vector<double> times;
  /// Max over both GHZ phase conventions at each sample.
  std::vector<double> fidelity;
  std::vector<double> fidelity_forward;
  std::vector<double> fidelity_conjugate;
  std::vector<double> norm;
  /// mode_occupation[mode][sample].
  std::vector<std::vector<double>> mode_occupation;
  /// Convention with the larger fidelity at the final time.
  GhzPhase convention = GhzPhase::Forward;
  EvolveStats stats;
  Vector final_state;
  HilbertSpace space;

  double final_fidelity() const { return fidelity.back(); }
  double max_norm_drift() const;
  /// Index of the largest fidelity with time in [t0, t1].
  std::size_t peak_index(double t0, double t1) const;
};

/// Evolves initial_state(space) under `h` and records the GHZ trajectory.
Trajectory run_trajectory(const TimeDependentHamiltonian& h, double t_final,
                          const IntegratorConfig& cfg, const SamplePlan& plan);

enum class SingleVariant { Full, Intermediate, Effective };
enum class CoupledVariant { Full, Effective };

std::string to_string(SingleVariant v);
std::string to_string(CoupledVariant v);

TimeDependentHamiltonian build_single(const SingleTlrCircuit& circuit, SingleVariant variant,
                                      std::size_t n_max);
TimeDependentHamiltonian build_coupled(const CoupledTlrCircuit& circuit, CoupledVariant variant,
                                       std::size_t n_max);

Trajectory run_scenario_single(const SingleTlrCircuit& circuit, SingleVariant variant,
                               std::size_t n_max, double t_final, const IntegratorConfig& cfg,
                               const SamplePlan& plan);
Trajectory run_scenario_coupled(const CoupledTlrCircuit& circuit, CoupledVariant variant,
                                std::size_t n_max, double t_final, const IntegratorConfig& cfg,
                                const SamplePlan& plan);

/// Worker count from GHZFORGE_THREADS, else hardware concurrency (>= 1).
std::size_t worker_count();

/// Runs job(i) for i in [0, count) on up to `workers` threads. Exceptions are
/// rethrown on the caller (the lowest failing index wins).
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& job);

/// One trajectory per multiplier with Omega_R = multiplier * |delta|, in
/// input order. Per-qubit Rabi overrides are cleared.
std::vector<Trajectory> sweep_drive_strength(const SingleTlrCircuit& circuit,
                                             SingleVariant variant,
                                             const std::vector<double>& multipliers,
                                             std::size_t n_max, double t_final,
                                             const IntegratorConfig& cfg, const SamplePlan& plan,
                                             std::size_t workers = 0);
/// Omega_R = multiplier * |J|.
std::vector<Trajectory> sweep_drive_strength(const CoupledTlrCircuit& circuit,
                                             CoupledVariant variant,
                                             const std::vector<double>& multipliers,
                                             std::size_t n_max, double t_final,
                                             const IntegratorConfig& cfg, const SamplePlan& plan,
                                             std::size_t workers = 0);

/// Least-squares fit of values(t) over [t0, t1] to a quadratic trend plus
/// cos/sin harmonics at each of `frequencies` (rad/ns). Returns the
/// amplitude sqrt(a^2 + b^2) of each harmonic.
std::vector<double> harmonic_amplitudes(const std::vector<double>& times,
                                        const std::vector<double>& values, double t0, double t1,
                                        const std::vector<double>& frequencies);

/// Angular frequency in [w_lo, w_hi] whose single-harmonic fit (on top of a
/// quadratic trend) captures the most power over [t0, t1]; refined by golden
/// section after a grid scan.
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& values,
                          double t0, double t1, double w_lo, double w_hi);

/// Lab-frame vs rotating-frame comparison for one qubit and one mode. The
/// lab state (started at D(beta(0)) |+, 0>) is mapped back with D(-beta(t))
/// and the drive-frame rotation, then compared with the full rotating-frame
/// evolution from |+, 0>.
struct FrameConsistencyReport {
  double t_final = 0.0;
  double rabi = 0.0;
  /// min over global phase of || psi_lab - e^{i phi} psi_rot ||.
  double state_distance = 0.0;
  double overlap = 0.0;  ///< |<psi_lab|psi_rot>|
};

FrameConsistencyReport frame_consistency(const SingleTlrCircuit& circuit,
                                         const ResonatorDrive& drive, std::size_t n_max,
                                         double t_final, const IntegratorConfig& cfg = {});

}  // namespace ghzforge

#endif  // GHZFORGE_DYNAMICS_HPP
