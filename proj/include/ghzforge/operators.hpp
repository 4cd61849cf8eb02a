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

// Dense linear algebra over composite qubit (x) boson Hilbert spaces.
//
// Tensor-product convention: qubits first, then bosonic modes in declared
// order; qubit 0 is the leftmost (slowest-varying) factor. A basis index
// therefore decomposes as
//
//   index = ((q_0 * 2 + q_1) * 2 + ... + q_{N-1}) * mode_dim + mode_index
//
// with mode_index built the same way from the per-mode Fock numbers.
//
// Qubit basis: the two levels of each qubit are indexed in the energy
// eigenbasis with index 0 = excited |->, index 1 = ground |+>. With that
// ordering the standard Pauli matrices give sigma_z = +1 on the excited
// state and sigma_plus = |-><+| raises ground to excited.

#ifndef GHZFORGE_OPERATORS_HPP
#define GHZFORGE_OPERATORS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ghzforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Qubit-level indices in the energy eigenbasis.
inline constexpr std::size_t kExcited = 0;
inline constexpr std::size_t kGround = 1;

class HilbertSpace {
 public:
  HilbertSpace() = default;
  HilbertSpace(std::size_t qubit_count, std::vector<std::size_t> mode_truncations);

  static HilbertSpace qubits(std::size_t count) { return HilbertSpace(count, {}); }
  static HilbertSpace mode(std::size_t n_max) { return HilbertSpace(0, {n_max}); }

  std::size_t qubit_count() const { return qubit_count_; }
  std::size_t mode_count() const { return modes_.size(); }
  const std::vector<std::size_t>& mode_truncations() const { return modes_; }

  std::size_t factor_count() const { return qubit_count_ + modes_.size(); }
  std::size_t factor_dim(std::size_t factor) const;
  std::size_t qubit_factor(std::size_t qubit) const;
  std::size_t mode_factor(std::size_t mode) const;

  /// 2^qubit_count.
  std::size_t qubit_dim() const { return std::size_t{1} << qubit_count_; }
  /// Product of mode truncations (1 when there are no modes).
  std::size_t mode_dim() const;
  std::size_t dim() const { return qubit_dim() * mode_dim(); }

  /// The qubit-only space with the same qubit count.
  HilbertSpace qubit_space() const { return qubits(qubit_count_); }

  std::string describe() const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::size_t qubit_count_ = 0;
  std::vector<std::size_t> modes_;
};

/// Square complex matrix tied to a Hilbert space. Hamiltonians are in
/// rad/ns; unitaries and projectors are dimensionless.
class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace space, Matrix entries);

  static Operator identity(const HilbertSpace& space);
  static Operator zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }
  Matrix& matrix() { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }

  Operator adjoint() const { return {space_, entries_.adjoint()}; }

  /// max |A - A^dagger| relative to the largest entry (0 for the zero matrix).
  double hermiticity_defect() const;
  /// max |A^dagger A - I|.
  double unitarity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  bool is_unitary(double tol = 1e-9) const { return unitarity_defect() <= tol; }

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(Operator lhs, Complex scale) { return lhs *= scale; }
  friend Operator operator*(Complex scale, Operator rhs) { return rhs *= scale; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);

 private:
  HilbertSpace space_;
  Matrix entries_;
};

Operator commutator(const Operator& a, const Operator& b);

/// Largest entry magnitude of `a - b`.
double max_abs_difference(const Operator& a, const Operator& b);

/// Pure state; construction checks the norm.
class StateVector {
 public:
  StateVector() = default;
  StateVector(HilbertSpace space, Vector amplitudes, double norm_tol = 1e-9);

  /// Computational basis state `index`.
  static StateVector basis(const HilbertSpace& space, std::size_t index);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

  Complex inner(const StateVector& other) const { return amplitudes_.dot(other.amplitudes_); }
  StateVector applied(const Operator& op) const;

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite (within tolerances).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(HilbertSpace space, Matrix entries);

  static DensityMatrix pure(const StateVector& psi);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }

  double trace() const { return entries_.trace().real(); }
  double purity() const;
  /// <psi| rho |psi>, real part.
  double expectation(const StateVector& psi) const;

 private:
  HilbertSpace space_;
  Matrix entries_;
};

enum class Axis { X, Y, Z };

/// Standard Pauli matrix on a single qubit.
Operator pauli(Axis axis);
/// |-><+| in the energy-eigenbasis ordering (index 0 excited).
Operator sigma_plus();
Operator sigma_minus();

/// Truncated annihilation operator on n_max Fock levels; a|n> = sqrt(n)|n-1>.
Operator annihilation(std::size_t n_max);
Operator creation(std::size_t n_max);
Operator number(std::size_t n_max);

/// Places a single-factor operator on `factor` of `space`, identity elsewhere.
Operator embed(const Operator& op, std::size_t factor, const HilbertSpace& space);

/// Places an operator acting on the `factor_span` consecutive factors
/// starting at `first_factor`.
Operator embed(const Operator& op, std::size_t first_factor, std::size_t factor_span,
               const HilbertSpace& space);

/// Kronecker product; result space concatenates qubits then modes of both
/// arguments, so `a` must not carry modes when `b` carries qubits.
Operator tensor(const Operator& a, const Operator& b);

/// Traces out every bosonic factor.
DensityMatrix partial_trace_modes(const StateVector& psi);
/// Unchecked variant for integrator-internal states whose norm may drift.
Matrix reduced_qubit_matrix(const HilbertSpace& space, const Vector& amplitudes);
DensityMatrix partial_trace_modes(const DensityMatrix& rho);

/// exp(scale * op). Hermitian generators with purely real or imaginary scale
/// use an eigendecomposition; everything else goes through scaling and
/// squaring with a Pade approximant.
Operator matrix_exponential(const Operator& op, Complex scale);

/// D(beta) = exp(beta a^dagger - beta^* a) on n_max levels. Warns when
/// |beta|^2 > n_max / 4.
Operator displacement(Complex beta, std::size_t n_max);

/// <a^dagger a> of bosonic mode `mode` (0-based among the modes).
double mean_occupation(const StateVector& psi, std::size_t mode);
double mean_occupation(const HilbertSpace& space, const Vector& amplitudes, std::size_t mode);

}  // namespace ghzforge

#endif  // GHZFORGE_OPERATORS_HPP
