// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gqc/core.hpp"
#include "gqc/geometry.hpp"
#include "gqc/random.hpp"

using namespace gqc;

namespace {

CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(static_cast<int>(v.size()), static_cast<int>(v.size()));
  int k = 0;
  for (double x : v) m(k, k) = x, ++k;
  return m;
}

// Index-loop oracle for Tr_E.
CMatrix partial_trace_oracle(const CMatrix& m, int d_S, int d_E) {
  CMatrix out = CMatrix::Zero(d_S, d_S);
  for (int i = 0; i < d_S; ++i)
    for (int j = 0; j < d_S; ++j)
      for (int k = 0; k < d_E; ++k) out(i, j) += m(i * d_E + k, j * d_E + k);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// operator-core

TEST(HsInner, IdentityAndPauli) {
  EXPECT_NEAR(std::abs(hs_inner(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - cplx(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hs_inner(pauli_z(), pauli_x())), 0.0, 1e-15);
}

TEST(HsInner, MatchesEntrywiseSum) {
  Rng rng(1);
  const CMatrix a = random_ginibre(4, 4, rng), b = random_ginibre(4, 4, rng);
  cplx acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += std::conj(a(i, j)) * b(i, j);
  EXPECT_NEAR(std::abs(hs_inner(a, b) - acc), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))), 0.0, 1e-12);
  EXPECT_GT(hs_inner(a, a).real(), 0.0);
}

TEST(HsInner, RejectsShapeMismatch) {
  EXPECT_THROW(hs_inner(CMatrix::Identity(2, 2), CMatrix::Identity(3, 3)), DimensionError);
}

TEST(HermitianOperator, Validation) {
  CMatrix m = pauli_x();
  m(0, 1) += 1e-3;
  EXPECT_THROW(HermitianOperator{m}, ValidationError);
  CMatrix nan = pauli_x();
  nan(1, 0) = std::nan("");
  try {
    HermitianOperator h(nan, {}, "h");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("[1][0]"), std::string::npos);
  }
}

TEST(DensityOperator, NamesViolatedInvariant) {
  try {
    DensityOperator r(diag({0.5, 0.4}), {}, "rho_E");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "rho_E: trace");
  }
  try {
    DensityOperator r(diag({1.2, -0.2}), {}, "rho_E");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "rho_E: eigenvalue");
  }
}

TEST(EigHermitian, DiagonalAndPauli) {
  const auto s = eig_hermitian(HermitianOperator(diag({3, 1, 2})));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 2.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 3.0, 1e-14);
  const auto x = eig_hermitian(HermitianOperator(pauli_x()));
  EXPECT_NEAR(x.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(x.eigenvalues(1), 1.0, 1e-14);
}

TEST(EigHermitian, ReconstructionAndOrthonormality) {
  Rng rng(2);
  const HermitianOperator h = random_hermitian(6, rng);
  const auto s = eig_hermitian(h);
  EXPECT_LE((reconstruct(s, s.eigenvalues) - h.matrix()).norm(), 1e-10 * std::max(1.0, h.matrix().norm()));
  EXPECT_LE((s.eigenvectors.adjoint() * s.eigenvectors - CMatrix::Identity(6, 6)).norm(), 1e-10 * std::sqrt(6.0));
}

TEST(EigHermitian, DegenerateSubspaceIsDeterministic) {
  // Identity has a fully degenerate spectrum: the basis is the computational one.
  const auto s = eig_hermitian(HermitianOperator(CMatrix::Identity(3, 3)));
  EXPECT_LE((s.eigenvectors - CMatrix::Identity(3, 3)).norm(), 1e-12);
  Rng rng(3);
  const CMatrix w = random_unitary(4, rng).matrix();
  const HermitianOperator h = HermitianOperator::symmetrized(w * diag({1, 1, 2, 2}) * w.adjoint());
  const auto a = eig_hermitian(h), b = eig_hermitian(h);
  EXPECT_EQ((a.eigenvectors - b.eigenvectors).norm(), 0.0);
}

TEST(MatrixFn, SqrtAbsAndCovariance) {
  EXPECT_LE((sqrt_psd(HermitianOperator(diag({4, 1, 0}))).matrix() - diag({2, 1, 0})).norm(), 1e-14);
  EXPECT_LE((abs_op(HermitianOperator(diag({-2, 3}))).matrix() - diag({2, 3})).norm(), 1e-14);
  Rng rng(4);
  const HermitianOperator x = random_psd(4, rng);
  const CMatrix w = random_unitary(4, rng).matrix();
  const CMatrix lhs = sqrt_psd(HermitianOperator::symmetrized(w * x.matrix() * w.adjoint())).matrix();
  const CMatrix rhs = w * sqrt_psd(x).matrix() * w.adjoint();
  EXPECT_LE((lhs - rhs).norm(), 1e-10);
  const CMatrix r = sqrt_psd(x).matrix();
  EXPECT_LE((r * r - x.matrix()).norm(), 1e-9);
}

TEST(MatrixFn, SqrtClampsSmallNegativesAndRejectsLarge) {
  EXPECT_NO_THROW(sqrt_psd(HermitianOperator(diag({1.0, -1e-12}))));
  EXPECT_THROW(sqrt_psd(HermitianOperator(diag({1.0, -1e-3}))), NumericalError);
}

TEST(Tensor, Expansions) {
  EXPECT_LE((tensor(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)).norm(), 0.0);
  EXPECT_LE((tensor(pauli_z(), CMatrix::Identity(2, 2)) - diag({1, 1, -1, -1})).norm(), 0.0);
  Rng rng(5);
  const CMatrix a = random_ginibre(2, 3, rng), b = random_ginibre(3, 2, rng);
  EXPECT_NEAR(tensor(a, b).norm(), a.norm() * b.norm(), 1e-12);
}

TEST(PartialTrace, ProductIdentityAndOracle) {
  Rng rng(6);
  const DensityOperator rs = random_density(2, rng), re = random_density(3, rng);
  EXPECT_LE((partial_trace_env(tensor(rs.matrix(), re.matrix()), 2, 3) - rs.matrix()).norm(), 1e-12);
  EXPECT_LE((partial_trace_env(CMatrix::Identity(4, 4), 2, 2) - 2.0 * CMatrix::Identity(2, 2)).norm(), 0.0);
  const CMatrix m = random_ginibre(6, 6, rng);
  EXPECT_LE((partial_trace_env(m, 2, 3) - partial_trace_oracle(m, 2, 3)).norm(), 1e-13);
  EXPECT_THROW(partial_trace_env(m, 4, 2), DimensionError);
}

TEST(UnitaryEvolve, ClosedFormsAndGroupLaw) {
  EXPECT_LE((unitary_evolve(HermitianOperator::zero(3), 2.5).matrix() - CMatrix::Identity(3, 3)).norm(), 1e-15);
  const CMatrix u = unitary_evolve(HermitianOperator(0.5 * std::numbers::pi * pauli_x()), 1.0).matrix();
  EXPECT_LE((u - (-kI) * pauli_x()).norm(), 1e-10);
  Rng rng(7);
  const HermitianOperator h = random_hermitian(4, rng);
  const CMatrix a = unitary_evolve(h, 0.3).matrix() * unitary_evolve(h, 0.9).matrix();
  EXPECT_LE((a - unitary_evolve(h, 1.2).matrix()).norm(), 1e-12);
  const CMatrix v = unitary_evolve(h, 1.7).matrix();
  const CMatrix k = random_hermitian(4, rng).matrix();
  EXPECT_NEAR((v * k * v.adjoint()).norm(), k.norm(), 1e-10);
}

TEST(Expm, AgreesWithSpectralExponential) {
  Rng rng(8);
  const HermitianOperator h = random_hermitian(5, rng, 3.0);
  EXPECT_LE((expm(-kI * 1.3 * h.matrix()) - unitary_evolve(h, 1.3).matrix()).norm(), 1e-11);
}

// ---------------------------------------------------------------------------
// unitary-geometry

TEST(Bases, PauliAndGellMann) {
  for (int n : {1, 2, 3}) {
    const auto b = pauli_string_basis(n);
    const int d = 1 << n;
    ASSERT_EQ(static_cast<int>(b.size()), d * d - 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
      EXPECT_LE(std::abs(b[i].op.trace()), 1e-12);
      for (std::size_t j = 0; j < b.size(); ++j)
        EXPECT_NEAR(std::abs(hs_inner(b[i].op, b[j].op) - cplx(i == j ? 1.0 : 0.0)), 0.0, 1e-10);
    }
  }
  const auto g = gell_mann_basis(3);
  ASSERT_EQ(g.size(), 8u);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      EXPECT_NEAR(std::abs(hs_inner(g[i].op, g[j].op) - cplx(i == j ? 1.0 : 0.0)), 0.0, 1e-10);
}

TEST(PenaltyMetric, RejectsBadInput) {
  auto b = default_su_basis(2);
  EXPECT_THROW(PenaltyMetric(2, b, {1.0, 0.0, 1.0}), ValidationError);
  auto b2 = b;
  b2[0].op = CMatrix::Identity(2, 2);
  EXPECT_THROW(PenaltyMetric(2, b2, {1.0, 1.0, 1.0}), ValidationError);
  b.pop_back();
  EXPECT_THROW(PenaltyMetric(2, b, {1.0, 1.0}), ValidationError);
}

TEST(OmegaNorm, Examples) {
  const PenaltyMetric m = PenaltyMetric::uniform(2);
  // ||sigma_z||_hs = sqrt(2).
  EXPECT_NEAR(omega_norm(m, pauli_z()), std::sqrt(2.0) / std::sqrt(3.0), 1e-14);
  EXPECT_EQ(omega_norm(m, CMatrix::Zero(2, 2)), 0.0);
  const auto basis = default_su_basis(2);
  std::vector<double> w = {1.0, 1.0, 1.0};
  w[1] = 2.0;
  const PenaltyMetric m2(2, basis, w);
  EXPECT_NEAR(omega_norm(m2, basis[1].op) / omega_norm(m, basis[1].op), std::sqrt(2.0), 1e-14);
  EXPECT_THROW(omega_norm(m, CMatrix::Identity(2, 2)), ValidationError);
}

TEST(HsComplexity, IdealQubitAnchor) {
  const HermitianOperator h(0.5 * pauli_z());
  EXPECT_NEAR(hs_complexity_static(h, 1.0, 2), (1.0 / std::sqrt(3.0)) * (std::sqrt(2.0) / 2.0), 1e-15);
  EXPECT_EQ(hs_complexity_static(HermitianOperator::zero(2), 1.0, 2), 0.0);
  EXPECT_NEAR(hs_complexity_static(h, 2.0, 2), 2.0 * hs_complexity_static(h, 1.0, 2), 1e-15);
  Rng rng(9);
  const CMatrix w = random_unitary(2, rng).matrix();
  EXPECT_NEAR(hs_complexity_static(HermitianOperator::symmetrized(w * h.matrix() * w.adjoint()), 1.0, 2),
              hs_complexity_static(h, 1.0, 2), 1e-12);
}

TEST(HsComplexity, OmegaNormReconciliation) {
  // With uniform weights, t * omega_norm(H) equals t ||H||_hs / sqrt(N^2 - 1).
  Rng rng(10);
  for (int n : {2, 3, 4}) {
    const HermitianOperator h = random_traceless_hermitian(n, rng);
    EXPECT_NEAR(1.7 * omega_norm(PenaltyMetric::uniform(n), h), hs_complexity_static(h, 1.7, n), 1e-12);
  }
}

TEST(PathLength, ConstantZeroAndModulated) {
  const PenaltyMetric m = PenaltyMetric::uniform(2);
  const HermitianOperator h(0.5 * pauli_z());
  const auto constant = HamiltonianPath::sample([&](double) { return h; }, 0.0, 1.3, 5);
  EXPECT_NEAR(path_length(m, constant), hs_complexity_static(h, 1.3, 2), 1e-14);
  const auto zero = HamiltonianPath::sample([](double) { return HermitianOperator::zero(2); }, 0.0, 1.0, 3);
  EXPECT_EQ(path_length(m, zero), 0.0);

  // |sin(s)| sigma_x on [0, 2]: exact integral (1 - cos 2) sqrt(2/3).
  auto f = [](double s) { return HermitianOperator(std::sin(s) * pauli_x()); };
  const auto fine = HamiltonianPath::sample(f, 0.0, 2.0, 4001);
  EXPECT_NEAR(path_length(m, fine), (1.0 - std::cos(2.0)) * std::sqrt(2.0 / 3.0), 1e-6);
  const auto half = HamiltonianPath::sample(f, 0.0, 2.0, 2001);
  EXPECT_LE(std::abs(path_length(m, fine) - path_length(m, half)), 1e-6);
}

TEST(PathLength, RightInvarianceSurrogate) {
  // The generator of (U W) W^{-1} is that of U itself.
  Rng rng(11);
  const HermitianOperator h = random_traceless_hermitian(2, rng);
  const CMatrix w = random_unitary(2, rng).matrix();
  const CMatrix uw = unitary_evolve(h, 0.4).matrix() * w;
  const CMatrix back = uw * w.adjoint();
  EXPECT_LE((back - unitary_evolve(h, 0.4).matrix()).norm(), 1e-12);
  EXPECT_NEAR(hs_complexity_static(h, 0.4, 2), 0.4 * h.matrix().norm() / std::sqrt(3.0), 1e-15);
}

TEST(LocalityMetric, Weights) {
  const PenaltyMetric m2 = locality_penalty_metric(2, 4.0);
  for (double w : m2.weights()) EXPECT_EQ(w, 1.0);
  const PenaltyMetric m3 = locality_penalty_metric(3, 4.0);
  EXPECT_EQ(m3.size(), 63u);
  for (std::size_t i = 0; i < m3.size(); ++i) {
    if (m3.basis()[i].label == "XXX") EXPECT_EQ(m3.weights()[i], 4.0);
    if (m3.basis()[i].label == "XXI") EXPECT_EQ(m3.weights()[i], 1.0);
  }
}

TEST(EulerArnold, UniformGeodesicIsOneParameterSubgroup) {
  const PenaltyMetric m = PenaltyMetric::uniform(2);
  const GeodesicPath g = euler_arnold_geodesic(m, HermitianOperator(pauli_z()), 1.0, 128);
  EXPECT_LE((g.unitaries.front().matrix() - CMatrix::Identity(2, 2)).norm(), 1e-10);
  const CMatrix expect = unitary_evolve(HermitianOperator(pauli_z()), 1.0).matrix();
  EXPECT_LE((g.unitaries.back().matrix() - expect).norm(), 1e-8);
  for (const auto& a : g.body_velocities) EXPECT_NEAR(a.matrix().norm(), std::sqrt(2.0), 1e-12);
}

TEST(EulerArnold, ZeroVelocityStaysAtIdentity) {
  const GeodesicPath g = euler_arnold_geodesic(PenaltyMetric::uniform(2), HermitianOperator::zero(2), 1.0, 32);
  for (const auto& u : g.unitaries) EXPECT_LE((u.matrix() - CMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(EulerArnold, AnisotropicSpeedConservation) {
  const PenaltyMetric m(2, default_su_basis(2), {1.0, 3.0, 7.0});
  const HermitianOperator a0 = HermitianOperator::symmetrized(0.4 * pauli_x() - 0.3 * pauli_y() + 0.6 * pauli_z());
  const GeodesicPath g = euler_arnold_geodesic(m, a0, 3.0, 512);
  const double v0 = omega_norm(m, g.body_velocities.front());
  for (const auto& a : g.body_velocities) EXPECT_NEAR(omega_norm(m, a), v0, 1e-7);
  for (const auto& u : g.unitaries)
    EXPECT_LE((u.matrix().adjoint() * u.matrix() - CMatrix::Identity(2, 2)).norm(), 1e-9);
  // Non-trivial dynamics: the body velocity actually rotates.
  EXPECT_GT((g.body_velocities.back().matrix() - a0.matrix()).norm(), 1e-2);
}

TEST(EulerArnold, RejectsBadArguments) {
  const PenaltyMetric m = PenaltyMetric::uniform(2);
  EXPECT_THROW(euler_arnold_geodesic(m, HermitianOperator(pauli_z()), 1.0, 8), ValidationError);
  EXPECT_THROW(euler_arnold_geodesic(m, HermitianOperator(CMatrix::Identity(2, 2)), 1.0, 32), ValidationError);
}
