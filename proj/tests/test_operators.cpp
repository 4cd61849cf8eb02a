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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ghzforge/errors.hpp"
#include "ghzforge/operators.hpp"

namespace ghzforge {
namespace {

Matrix dense(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(Pauli, AlgebraAndLadder) {
  const Matrix x = pauli(Axis::X).matrix();
  const Matrix y = pauli(Axis::Y).matrix();
  const Matrix z = pauli(Axis::Z).matrix();
  const Matrix id = Matrix::Identity(2, 2);
  EXPECT_LT((x * x - id).norm(), 1e-15);
  EXPECT_LT((y * y - id).norm(), 1e-15);
  EXPECT_LT((x * y - kI * z).norm(), 1e-15);
  EXPECT_LT((y * z - kI * x).norm(), 1e-15);
  EXPECT_LT((x * y + y * x).norm(), 1e-15);
  // Excited |-> sits at index 0 and sigma_z = +1 there.
  EXPECT_EQ(z(kExcited, kExcited), Complex(1.0));
  const Matrix sp = sigma_plus().matrix();
  EXPECT_EQ(sp(kExcited, kGround), Complex(1.0));
  EXPECT_LT((sp - 0.5 * (x + kI * y)).norm(), 1e-15);
  EXPECT_LT((sigma_minus().matrix() - sp.adjoint()).norm(), 1e-15);
}

TEST(Ladder, MatrixElements) {
  const std::size_t n = 7;
  const Matrix a = annihilation(n).matrix();
  for (std::size_t k = 1; k < n; ++k) {
    EXPECT_NEAR(a(k - 1, k).real(), std::sqrt(double(k)), 1e-15);
  }
  EXPECT_LT((creation(n).matrix() - a.adjoint()).norm(), 1e-15);
  const Matrix num = number(n).matrix();
  EXPECT_LT((num - a.adjoint() * a).norm(), 1e-14);
  const Matrix c = a * a.adjoint() - a.adjoint() * a;
  for (std::size_t k = 0; k + 1 < n; ++k) EXPECT_NEAR(c(k, k).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(n - 1, n - 1).real(), 1.0 - double(n), 1e-13);
  EXPECT_THROW(annihilation(1), InputError);
}

TEST(HilbertSpace, IndexConvention) {
  const HilbertSpace space(2, {3, 4});
  EXPECT_EQ(space.dim(), 48u);
  EXPECT_EQ(space.mode_dim(), 12u);
  EXPECT_EQ(space.factor_count(), 4u);
  EXPECT_EQ(space.mode_factor(1), 3u);
  // Put qubit 0 excited, qubit 1 ground, mode0 = 2, mode1 = 1 with embedded
  // number operators and check where the weight lands.
  const std::size_t idx = ((0 * 2 + 1) * 3 + 2) * 4 + 1;
  const StateVector psi = StateVector::basis(space, idx);
  EXPECT_NEAR(mean_occupation(psi, 0), 2.0, 1e-15);
  EXPECT_NEAR(mean_occupation(psi, 1), 1.0, 1e-15);
  const Operator z0 = embed(pauli(Axis::Z), space.qubit_factor(0), space);
  const Operator z1 = embed(pauli(Axis::Z), space.qubit_factor(1), space);
  EXPECT_NEAR(psi.inner(psi.applied(z0)).real(), 1.0, 1e-15);
  EXPECT_NEAR(psi.inner(psi.applied(z1)).real(), -1.0, 1e-15);
  EXPECT_THROW(HilbertSpace(1, {1}), InputError);
  EXPECT_THROW(space.mode_factor(2), InputError);
}

TEST(Embed, MatchesKroneckerProducts) {
  const HilbertSpace space(2, {3});
  const Matrix x = pauli(Axis::X).matrix();
  const Matrix a = annihilation(3).matrix();
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix i3 = Matrix::Identity(3, 3);
  auto kron = [](const Matrix& p, const Matrix& q) {
    Matrix r(p.rows() * q.rows(), p.cols() * q.cols());
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = 0; j < p.cols(); ++j) r.block(i * q.rows(), j * q.cols(), q.rows(), q.cols()) = p(i, j) * q;
    return r;
  };
  EXPECT_LT((embed(pauli(Axis::X), 1, space).matrix() - kron(kron(i2, x), i3)).norm(), 1e-15);
  EXPECT_LT((embed(annihilation(3), 2, space).matrix() - kron(kron(i2, i2), a)).norm(), 1e-15);
  const Operator xx = tensor(pauli(Axis::X), pauli(Axis::X));
  EXPECT_LT((embed(xx, 0, 2, space).matrix() - kron(kron(x, x), i3)).norm(), 1e-15);
  const Operator qa = tensor(pauli(Axis::Z), annihilation(3));
  EXPECT_EQ(qa.space(), HilbertSpace(1, {3}));
  EXPECT_THROW(tensor(annihilation(3), pauli(Axis::X)), InputError);
  EXPECT_THROW(embed(annihilation(3), 0, space), InputError);
}

TEST(Operator, SpaceMismatchRejected) {
  const Operator a = Operator::identity(HilbertSpace::qubits(1));
  const Operator b = Operator::identity(HilbertSpace::mode(2));
  EXPECT_THROW(a + b, InputError);
  EXPECT_THROW(Operator(HilbertSpace::qubits(1), Matrix::Identity(3, 3)), InputError);
}

TEST(StateVector, NormChecked) {
  const HilbertSpace space = HilbertSpace::qubits(1);
  EXPECT_THROW(StateVector(space, Vector::Ones(2)), InputError);
  EXPECT_THROW(StateVector(space, Vector::Ones(3) / std::sqrt(3.0)), InputError);
  EXPECT_NO_THROW(StateVector(space, Vector::Ones(2) / std::sqrt(2.0)));
}

TEST(PartialTrace, ProductAndEntangledStates) {
  // (|+> (x) |1>) : reduced state is pure |+><+|.
  const HilbertSpace space(1, {3});
  Vector v = Vector::Zero(6);
  v(kGround * 3 + 1) = 1.0;
  const DensityMatrix rho = partial_trace_modes(StateVector(space, v));
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
  EXPECT_NEAR(rho.matrix()(kGround, kGround).real(), 1.0, 1e-15);
  // (|-,0> + |+,1>) / sqrt2 : maximally mixed qubit.
  Vector w = Vector::Zero(6);
  w(kExcited * 3 + 0) = 1.0 / std::sqrt(2.0);
  w(kGround * 3 + 1) = 1.0 / std::sqrt(2.0);
  const DensityMatrix mixed = partial_trace_modes(StateVector(space, w));
  EXPECT_NEAR(mixed.purity(), 0.5, 1e-15);
  EXPECT_LT((mixed.matrix() - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
  // Density-matrix route agrees with the state route.
  const DensityMatrix via_rho = partial_trace_modes(DensityMatrix::pure(StateVector(space, w)));
  EXPECT_LT((via_rho.matrix() - mixed.matrix()).norm(), 1e-15);
}

TEST(PartialTrace, RandomStatesProperties) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  const HilbertSpace space(2, {3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    Vector v(static_cast<Eigen::Index>(space.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    v.normalize();
    const DensityMatrix rho = partial_trace_modes(StateVector(space, v));
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_LT((rho.matrix() - rho.matrix().adjoint()).norm(), 1e-14);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(rho.matrix()).eigenvalues().minCoeff(), -1e-12);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
  }
}

TEST(DensityMatrix, Validation) {
  const HilbertSpace space = HilbertSpace::qubits(1);
  EXPECT_THROW(DensityMatrix(space, Matrix::Identity(2, 2)), InputError);
  EXPECT_THROW(DensityMatrix(space, dense({{1.0, 0.5}, {0.0, 0.0}})), InputError);
  EXPECT_THROW(DensityMatrix(space, dense({{1.5, 0.0}, {0.0, -0.5}})), InputError);
}

TEST(MatrixExponential, ClosedFormsOnPaulis) {
  const double theta = 0.731;
  const Operator u = matrix_exponential(pauli(Axis::X), Complex(0.0, -theta));
  const Matrix expect = std::cos(theta) * Matrix::Identity(2, 2) - kI * std::sin(theta) * pauli(Axis::X).matrix();
  EXPECT_LT((u.matrix() - expect).norm(), 1e-14);
  // Non-normal generator: exp(N) = I + N for nilpotent N.
  const Operator n(HilbertSpace::qubits(1), dense({{0.0, 2.5}, {0.0, 0.0}}));
  EXPECT_LT((matrix_exponential(n, 1.0).matrix() - dense({{1.0, 2.5}, {0.0, 1.0}})).norm(), 1e-14);
  // Real scale on a Hermitian generator.
  const Operator d = matrix_exponential(pauli(Axis::Z), 0.4);
  EXPECT_NEAR(d.matrix()(0, 0).real(), std::exp(0.4), 1e-14);
  EXPECT_NEAR(d.matrix()(1, 1).real(), std::exp(-0.4), 1e-14);
}

TEST(MatrixExponential, GroupProperty) {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> normal;
  Matrix h(6, 6);
  for (Eigen::Index i = 0; i < 6; ++i)
    for (Eigen::Index j = 0; j < 6; ++j) h(i, j) = Complex(normal(rng), normal(rng));
  const Operator gen(HilbertSpace::mode(6), 0.5 * (h + h.adjoint()));
  const Operator u1 = matrix_exponential(gen, Complex(0.0, -0.3));
  const Operator u2 = matrix_exponential(gen, Complex(0.0, -0.6));
  EXPECT_LT(max_abs_difference(u1 * u1, u2), 1e-13);
  EXPECT_TRUE(u2.is_unitary(1e-12));
}

TEST(Displacement, CoherentStatePoisson) {
  const Complex beta(0.6, -0.35);
  const std::size_t n_max = 30;
  const Operator d = displacement(beta, n_max);
  const StateVector coh(HilbertSpace::mode(n_max), d.matrix().col(0), 1e-9);
  double fact = 1.0;
  for (std::size_t n = 0; n < 10; ++n) {
    if (n > 0) fact *= double(n);
    const Complex expect = std::exp(-std::norm(beta) / 2.0) * std::pow(beta, double(n)) / std::sqrt(fact);
    EXPECT_LT(std::abs(coh.amplitudes()(n) - expect), 1e-12) << n;
  }
  EXPECT_NEAR(mean_occupation(coh, 0), std::norm(beta), 1e-12);
  EXPECT_TRUE(d.is_unitary(1e-12));
}

TEST(Displacement, WarnsOnLargeAmplitude) {
  ScopedWarningCapture capture;
  displacement(Complex(3.0, 0.0), 8);
  EXPECT_FALSE(capture.messages().empty());
}

TEST(Commutator, Basic) {
  const Operator c = commutator(pauli(Axis::X), pauli(Axis::Y));
  EXPECT_LT(max_abs_difference(c, Complex(0.0, 2.0) * pauli(Axis::Z)), 1e-15);
  EXPECT_NEAR(pauli(Axis::Y).hermiticity_defect(), 0.0, 1e-16);
  EXPECT_GT(sigma_plus().hermiticity_defect(), 0.5);
}

}  // namespace
}  // namespace ghzforge
