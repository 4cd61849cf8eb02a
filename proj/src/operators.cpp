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

#include "ghzforge/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "ghzforge/errors.hpp"

namespace ghzforge {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// I_left (x) op (x) I_right without materializing the identities.
Matrix kron_identity(std::size_t left, const Matrix& op, std::size_t right) {
  const auto d = static_cast<Eigen::Index>(op.rows());
  const auto l = static_cast<Eigen::Index>(left);
  const auto r = static_cast<Eigen::Index>(right);
  Matrix out = Matrix::Zero(l * d * r, l * d * r);
  for (Eigen::Index block = 0; block < l; ++block) {
    const Eigen::Index base = block * d * r;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const Complex v = op(i, j);
        if (v == Complex{}) continue;
        for (Eigen::Index k = 0; k < r; ++k) out(base + i * r + k, base + j * r + k) = v;
      }
    }
  }
  return out;
}

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) {
    throw InputError(std::string(what) + ": space mismatch (" + a.describe() + " vs " +
                     b.describe() + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace::HilbertSpace(std::size_t qubit_count, std::vector<std::size_t> mode_truncations)
    : qubit_count_(qubit_count), modes_(std::move(mode_truncations)) {
  if (qubit_count_ > 20) throw InputError("HilbertSpace: too many qubits for dense storage");
  for (std::size_t n : modes_) {
    if (n < 2) throw InputError("HilbertSpace: every mode truncation must be >= 2");
  }
}

std::size_t HilbertSpace::factor_dim(std::size_t factor) const {
  if (factor >= factor_count()) throw InputError("HilbertSpace: factor index out of range");
  return factor < qubit_count_ ? 2 : modes_[factor - qubit_count_];
}

std::size_t HilbertSpace::qubit_factor(std::size_t qubit) const {
  if (qubit >= qubit_count_) throw InputError("HilbertSpace: qubit index out of range");
  return qubit;
}

std::size_t HilbertSpace::mode_factor(std::size_t mode) const {
  if (mode >= modes_.size()) throw InputError("HilbertSpace: mode index out of range");
  return qubit_count_ + mode;
}

std::size_t HilbertSpace::mode_dim() const {
  return std::accumulate(modes_.begin(), modes_.end(), std::size_t{1}, std::multiplies<>());
}

std::string HilbertSpace::describe() const {
  std::ostringstream os;
  os << qubit_count_ << " qubit(s)";
  for (std::size_t n : modes_) os << " x mode[" << n << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(HilbertSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw InputError("Operator: matrix is " + std::to_string(entries_.rows()) + "x" +
                     std::to_string(entries_.cols()) + " but space " + space_.describe() +
                     " has dimension " + std::to_string(d));
  }
}

Operator Operator::identity(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix::Identity(d, d)};
}

Operator Operator::zero(const HilbertSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix::Zero(d, d)};
}

double Operator::hermiticity_defect() const {
  const double scale = entries_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

double Operator::unitarity_defect() const {
  const auto d = entries_.rows();
  return (entries_.adjoint() * entries_ - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator +");
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_space(space_, other.space_, "Operator -");
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  entries_ *= scale;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs.space_, rhs.space_, "Operator *");
  return {lhs.space_, lhs.entries_ * rhs.entries_};
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs_difference(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space(), "max_abs_difference");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// States

StateVector::StateVector(HilbertSpace space, Vector amplitudes, double norm_tol)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.dim()) {
    throw InputError("StateVector: amplitude count does not match " + space_.describe());
  }
  if (std::abs(amplitudes_.norm() - 1.0) > norm_tol) {
    throw InputError("StateVector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
  }
}

StateVector StateVector::basis(const HilbertSpace& space, std::size_t index) {
  if (index >= space.dim()) throw InputError("StateVector::basis: index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return {space, std::move(v)};
}

StateVector StateVector::applied(const Operator& op) const {
  require_same_space(space_, op.space(), "StateVector::applied");
  return {space_, op.matrix() * amplitudes_, 1e-6};
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw InputError("DensityMatrix: dimension does not match " + space_.describe());
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("DensityMatrix: not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex{1.0}) > 1e-9) {
    throw InputError("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-9) {
    throw InputError("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return {psi.space(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

double DensityMatrix::expectation(const StateVector& psi) const {
  require_same_space(space_, psi.space(), "DensityMatrix::expectation");
  return psi.amplitudes().dot(entries_ * psi.amplitudes()).real();
}

// ---------------------------------------------------------------------------
// Elementary operators

Operator pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, -kI, kI, 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return {HilbertSpace::qubits(1), m};
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(kExcited, kGround) = 1.0;
  return {HilbertSpace::qubits(1), m};
}

Operator sigma_minus() { return sigma_plus().adjoint(); }

Operator annihilation(std::size_t n_max) {
  if (n_max < 2) throw InputError("annihilation: n_max must be >= 2");
  const auto n = static_cast<Eigen::Index>(n_max);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {HilbertSpace::mode(n_max), m};
}

Operator creation(std::size_t n_max) { return annihilation(n_max).adjoint(); }

Operator number(std::size_t n_max) { return creation(n_max) * annihilation(n_max); }

Operator embed(const Operator& op, std::size_t factor, const HilbertSpace& space) {
  return embed(op, factor, 1, space);
}

Operator embed(const Operator& op, std::size_t first_factor, std::size_t factor_span,
               const HilbertSpace& space) {
  if (factor_span == 0 || first_factor + factor_span > space.factor_count()) {
    throw InputError("embed: factor range out of range for " + space.describe());
  }
  std::size_t left = 1, middle = 1, right = 1;
  for (std::size_t f = 0; f < space.factor_count(); ++f) {
    const std::size_t d = space.factor_dim(f);
    if (f < first_factor) {
      left *= d;
    } else if (f < first_factor + factor_span) {
      middle *= d;
    } else {
      right *= d;
    }
  }
  if (op.dim() != middle) {
    throw InputError("embed: operator dimension " + std::to_string(op.dim()) +
                     " does not match factor dimension " + std::to_string(middle));
  }
  return {space, kron_identity(left, op.matrix(), right)};
}

Operator tensor(const Operator& a, const Operator& b) {
  const HilbertSpace& sa = a.space();
  const HilbertSpace& sb = b.space();
  if (sa.mode_count() > 0 && sb.qubit_count() > 0) {
    throw InputError("tensor: qubit factors must precede mode factors");
  }
  std::vector<std::size_t> modes = sa.mode_truncations();
  modes.insert(modes.end(), sb.mode_truncations().begin(), sb.mode_truncations().end());
  return {HilbertSpace(sa.qubit_count() + sb.qubit_count(), std::move(modes)),
          kron(a.matrix(), b.matrix())};
}

Matrix reduced_qubit_matrix(const HilbertSpace& space, const Vector& amplitudes) {
  const auto q = static_cast<Eigen::Index>(space.qubit_dim());
  const auto m = static_cast<Eigen::Index>(space.mode_dim());
  if (amplitudes.size() != q * m) throw InputError("partial trace: dimension mismatch");
  // Column-major map: column = qubit index, row = mode index.
  Eigen::Map<const Matrix> block(amplitudes.data(), m, q);
  return block.transpose() * block.conjugate();
}

DensityMatrix partial_trace_modes(const StateVector& psi) {
  return {psi.space().qubit_space(), reduced_qubit_matrix(psi.space(), psi.amplitudes())};
}

DensityMatrix partial_trace_modes(const DensityMatrix& rho) {
  const auto q = static_cast<Eigen::Index>(rho.space().qubit_dim());
  const auto m = static_cast<Eigen::Index>(rho.space().mode_dim());
  Matrix out = Matrix::Zero(q, q);
  for (Eigen::Index i = 0; i < q; ++i) {
    for (Eigen::Index j = 0; j < q; ++j) {
      Complex acc{};
      for (Eigen::Index k = 0; k < m; ++k) acc += rho.matrix()(i * m + k, j * m + k);
      out(i, j) = acc;
    }
  }
  return {rho.space().qubit_space(), out};
}

Operator matrix_exponential(const Operator& op, Complex scale) {
  const bool axis_scale = scale.real() == 0.0 || scale.imag() == 0.0;
  if (axis_scale && op.hermiticity_defect() <= 1e-14) {
    // A = V diag(l) V^dagger  =>  exp(sA) = V diag(exp(s l)) V^dagger.
    const Matrix herm = 0.5 * (op.matrix() + op.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    const Vector phases =
        (scale * solver.eigenvalues().cast<Complex>().array()).exp().matrix();
    const Matrix& v = solver.eigenvectors();
    return {op.space(), v * phases.asDiagonal() * v.adjoint()};
  }
  const Matrix scaled = scale * op.matrix();
  return {op.space(), scaled.exp()};
}

Operator displacement(Complex beta, std::size_t n_max) {
  if (n_max < 2) throw InputError("displacement: n_max must be >= 2");
  if (std::norm(beta) > static_cast<double>(n_max) / 4.0) {
    warn("displacement: |beta|^2 = " + std::to_string(std::norm(beta)) +
         " exceeds n_max/4; truncation is untrustworthy");
  }
  const Operator a = annihilation(n_max);
  // beta a^dagger - beta^* a = -i * (i beta a^dagger - i beta^* a), the bracket Hermitian.
  const Operator generator = kI * beta * a.adjoint() - kI * std::conj(beta) * a;
  return matrix_exponential(generator, -kI);
}

double mean_occupation(const StateVector& psi, std::size_t mode) {
  return mean_occupation(psi.space(), psi.amplitudes(), mode);
}

double mean_occupation(const HilbertSpace& space, const Vector& amplitudes, std::size_t mode) {
  if (static_cast<std::size_t>(amplitudes.size()) != space.dim()) {
    throw InputError("mean_occupation: dimension mismatch");
  }
  const std::size_t factor = space.mode_factor(mode);
  std::size_t right = 1;
  for (std::size_t f = factor + 1; f < space.factor_count(); ++f) right *= space.factor_dim(f);
  const std::size_t n_max = space.factor_dim(factor);
  double acc = 0.0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const std::size_t n = (i / right) % n_max;
    acc += static_cast<double>(n) * std::norm(amplitudes(static_cast<Eigen::Index>(i)));
  }
  return acc;
}

}  // namespace ghzforge
