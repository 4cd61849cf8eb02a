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

// Circuit parameter records and Hamiltonian builders for flux qubits coupled
// to one driven resonator or to two resonators joined by a tunable coupler.
//
// All rates are angular frequencies in rad/ns (hbar = 1). Unless a builder
// says otherwise it works in the qubit energy eigenbasis described in
// operators.hpp and, for rotating-frame builders, in the frame rotating at
// the drive frequency.

#ifndef GHZFORGE_MODEL_HPP
#define GHZFORGE_MODEL_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghzforge/operators.hpp"

namespace ghzforge {

enum class Resonator { A, B };

struct QubitSpec {
  double gap = 0.0;       ///< Delta_k
  double coupling = 0.0;  ///< g_k
  Resonator resonator = Resonator::A;
  /// Per-qubit Rabi amplitude; falls back to the circuit-wide value.
  std::optional<double> rabi;
  /// Flux bias energy epsilon. Only the optimal point (zero) is modelled.
  double bias = 0.0;
};

struct SingleTlrCircuit {
  double resonator_frequency = 0.0;  ///< omega_r
  std::vector<QubitSpec> qubits;
  double drive_frequency = 0.0;  ///< omega_d
  double rabi = 0.0;             ///< Omega_R

  /// delta = omega_r - omega_d, signed.
  double detuning() const { return resonator_frequency - drive_frequency; }
  double rabi_for(std::size_t qubit) const;
  std::size_t qubit_count() const { return qubits.size(); }
};

struct CoupledTlrCircuit {
  double frequency_a = 0.0;  ///< omega_a
  double frequency_b = 0.0;  ///< omega_b
  std::vector<QubitSpec> qubits;
  double resonator_coupling = 0.0;  ///< J
  double drive_frequency = 0.0;
  double rabi = 0.0;

  /// delta' = omega - omega_d with omega = omega_a = omega_b.
  double detuning() const { return frequency_a - drive_frequency; }
  double rabi_for(std::size_t qubit) const;
  std::size_t qubit_count() const { return qubits.size(); }
};

/// Assigns the first floor(N/2) qubits to resonator A and the rest to B.
void assign_default_split(CoupledTlrCircuit& circuit);

/// Classical drive nu (a^dagger e^{-i w t} + h.c.) applied to the resonator.
struct ResonatorDrive {
  double amplitude = 0.0;  ///< nu
  double frequency = 0.0;  ///< omega_d
};

/// H(t) = sum_i exp(i w_i t) M_i with the M_i constant. Builders add terms in
/// Hermitian pairs so H(t) is Hermitian at every t. Terms with equal
/// frequency are merged.
class TimeDependentHamiltonian {
 public:
  struct Term {
    double frequency;
    Matrix matrix;
  };

  TimeDependentHamiltonian(HilbertSpace space, std::string label, double fastest_frequency);

  void add(double frequency, const Operator& op);
  /// Adds op e^{i w t} + op^dagger e^{-i w t} (just op + op^dagger when w = 0).
  void add_hermitian_pair(double frequency, const Operator& op);

  Operator operator()(double t) const;
  /// out = H(t) psi. `scratch` is resized as needed.
  void apply(double t, const Vector& psi, Vector& out, Vector& scratch) const;

  const HilbertSpace& space() const { return space_; }
  const std::string& label() const { return label_; }
  /// Largest rate the integrator must resolve: the larger of the builder's
  /// declared frequency (at least every term frequency) and the bound
  /// sum_i ||M_i||_2 on the instantaneous spectrum.
  double fastest_frequency() const { return std::max(declared_frequency_, norm_bound_); }
  double declared_frequency() const { return declared_frequency_; }
  double norm_bound() const { return norm_bound_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_time_independent() const;

  /// Sum of the zero-frequency terms.
  Operator static_part() const;

 private:
  HilbertSpace space_;
  std::string label_;
  void refresh_norm_bound();

  double declared_frequency_;
  double norm_bound_ = 0.0;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Single resonator

/// Basis change from the persistent-current basis {|0>, |1>} to the energy
/// eigenbasis {|->, |+>} on every qubit of `space` (identity on modes):
/// H_energy = W^dagger H_pc W.
Operator persistent_to_energy_basis(const HilbertSpace& space);

/// Laboratory-frame Hamiltonian with the drive applied to the resonator,
/// written in the persistent-current basis:
///   w_r a^dag a - sum Delta_k sbar_x^k / 2 + sum g_k (a^dag + a) sbar_z^k
///   + nu (a^dag e^{-i w_d t} + a e^{i w_d t}).
TimeDependentHamiltonian h_lab_single(const SingleTlrCircuit& circuit, const ResonatorDrive& drive,
                                      const HilbertSpace& space);

struct DisplacementReport {
  SingleTlrCircuit circuit;          ///< input with Rabi amplitude(s) filled in
  std::vector<double> rabi_per_qubit;
  bool homogeneous = true;
  /// |beta| of the steady displacement beta(t) = -nu e^{-i w_d t} / delta.
  double displacement_amplitude = 0.0;
};

/// Removes the resonator drive by the displacement a -> a + beta(t); the
/// qubits then see Omega_R^k cos(w_d t) sigma_x with Omega_R^k = -2 g_k nu / delta.
DisplacementReport displace_to_qubit_drive(const SingleTlrCircuit& circuit,
                                           const ResonatorDrive& drive);

/// delta a^dag a + sum g_k (a^dag s_-^k + a s_+^k) + sum Omega_R/2 (s_+^k + s_-^k).
/// Requires every gap to equal the drive frequency.
Operator h_rotating_single(const SingleTlrCircuit& circuit, const HilbertSpace& space);

/// The rotating-frame Hamiltonian plus the counter-rotating drive and
/// coupling terms.
TimeDependentHamiltonian h_full_sim_single(const SingleTlrCircuit& circuit,
                                           const HilbertSpace& space);

/// Interaction-picture image U^dag(t) H_int U(t) of the qubit-resonator
/// coupling with respect to delta a^dag a + sum Omega_R/2 sigma_x.
/// `oscillating_amplitude` scales the terms rotating at +-Omega_R; zero gives
/// h_eff_final exactly.
TimeDependentHamiltonian h_eff_intermediate(const SingleTlrCircuit& circuit,
                                            const HilbertSpace& space,
                                            double oscillating_amplitude = 1.0);

/// sum g_k/2 sigma_x^k (a e^{-i delta t} + a^dag e^{i delta t}).
TimeDependentHamiltonian h_eff_final(const SingleTlrCircuit& circuit, const HilbertSpace& space);

// ---------------------------------------------------------------------------
// Two resonators

/// Rotating frame, normal modes P = (a+b)/sqrt2 and Q = (a-b)/sqrt2 as the
/// two bosonic factors (P first).
Operator h_rotating_coupled(const CoupledTlrCircuit& circuit, const HilbertSpace& space);

/// Same physics in the resonator basis (a first, b second) with the hopping
/// term J (a^dag b + a b^dag). Used to cross-check the normal-mode builder.
Operator h_rotating_coupled_resonator_basis(const CoupledTlrCircuit& circuit,
                                            const HilbertSpace& space);

TimeDependentHamiltonian h_full_sim_coupled(const CoupledTlrCircuit& circuit,
                                            const HilbertSpace& space);

TimeDependentHamiltonian h_eff_coupled(const CoupledTlrCircuit& circuit,
                                       const HilbertSpace& space);

/// g = M I_p sqrt(hbar w_r / L) / hbar in rad/ns, from M in pH, I_p in nA,
/// L in nH and w_r in rad/ns.
double coupling_strength(double mutual_ph, double persistent_current_na, double inductance_nh,
                         double resonator_frequency);

}  // namespace ghzforge

#endif  // GHZFORGE_MODEL_HPP
