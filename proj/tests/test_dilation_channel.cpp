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

#include "gqc/channel_complexity.hpp"
#include "gqc/dilation.hpp"
#include "gqc/random.hpp"

using namespace gqc;

namespace {

const CMatrix I2 = CMatrix::Identity(2, 2);

// g sigma_z (x) sigma_x with the environment in |0>.
Dilation dephasing_dilation(double g, double omega = 0.0) {
  CMatrix h = g * tensor(pauli_z(), pauli_x()) + 0.5 * omega * tensor(pauli_z(), I2);
  return Dilation(2, 2, DensityOperator::basis_state(2, 0), HermitianOperator(h));
}

// cos^2(gt) rho + sin^2(gt) Z rho Z.
CMatrix dephasing_oracle(double g, double t, const CMatrix& rho) {
  const double c = std::cos(g * t), s = std::sin(g * t);
  return c * c * rho + s * s * pauli_z() * rho * pauli_z();
}

Dilation random_dilation(int d_S, int d_E, Rng& rng) {
  return Dilation(d_S, d_E, random_density(d_E, rng), random_hermitian(d_S * d_E, rng));
}

std::vector<CMatrix> matrix_units(int d) {
  std::vector<CMatrix> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      out.push_back(e);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// dilation-engine

TEST(Dilation, RejectsInconsistentDimensions) {
  EXPECT_THROW(Dilation(2, 2, DensityOperator::basis_state(3, 0), HermitianOperator::zero(4)),
               ValidationError);
  EXPECT_THROW(Dilation(2, 2, DensityOperator::basis_state(2, 0), HermitianOperator::zero(3)),
               ValidationError);
}

TEST(ChannelApply, DecoupledEnvironmentIsUnitary) {
  Rng rng(1);
  const HermitianOperator h_S = random_hermitian(2, rng);
  const Dilation d(2, 3, random_density(3, rng), HermitianOperator(embed_system(h_S.matrix(), 3)));
  const DensityOperator rho = random_density(2, rng);
  const CMatrix u = unitary_evolve(h_S, 0.8).matrix();
  EXPECT_LE((channel_apply(d, 0.8, rho).matrix() - u * rho.matrix() * u.adjoint()).norm(), 1e-12);
}

TEST(ChannelApply, DephasingClosedForm) {
  const double g = 0.7, t = 1.1;
  const Dilation d = dephasing_dilation(g);
  // exp(-i g t Z(x)X) = cos(gt) I - i sin(gt) Z(x)X since (Z(x)X)^2 = I.
  const CMatrix zx = tensor(pauli_z(), pauli_x());
  const CMatrix u = std::cos(g * t) * CMatrix::Identity(4, 4) - kI * std::sin(g * t) * zx;
  Rng rng(2);
  for (int k = 0; k < 4; ++k) {
    const DensityOperator rho = random_density(2, rng);
    const CMatrix direct = partial_trace_env(u * tensor(rho.matrix(), d.rho_E().matrix()) * u.adjoint(), 2, 2);
    const CMatrix got = channel_apply(d, t, rho).matrix();
    EXPECT_LE((got - direct).norm(), 1e-12);
    EXPECT_LE((got - dephasing_oracle(g, t, rho.matrix())).norm(), 1e-12);
  }
}

TEST(ChannelApply, ZeroTimeIsIdentityAndOutputsAreStates) {
  Rng rng(3);
  const Dilation d = random_dilation(3, 2, rng);
  const DensityOperator rho = random_density(3, rng);
  EXPECT_LE((channel_apply(d, 0.0, rho).matrix() - rho.matrix()).norm(), 1e-14);
  const CMatrix out = channel_apply(d, 2.3, rho).matrix();
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<CMatrix>(out).eigenvalues().minCoeff(), -1e-12);
  EXPECT_THROW(channel_apply(d, 1.0, random_density(2, rng)), DimensionError);
}

TEST(Kraus, CountsAndCompleteness) {
  EXPECT_EQ(kraus_from_dilation(dephasing_dilation(0.4), 1.0).operators().size(), 2u);
  Rng rng(4);
  for (int d_S : {1, 2, 3})
    for (int d_E : {1, 2, 3}) {
      const Dilation d = random_dilation(d_S, d_E, rng);
      const KrausSet k = kraus_from_dilation(d, 0.9);
      EXPECT_EQ(k.operators().size(), static_cast<std::size_t>(d_E * d_E));
      CMatrix acc = CMatrix::Zero(d_S, d_S);
      for (const auto& op : k.operators()) acc += op.adjoint() * op;
      EXPECT_LE((acc - CMatrix::Identity(d_S, d_S)).norm(), 1e-9);
      for (const auto& e : matrix_units(d_S))
        EXPECT_LE((k.apply(e) - channel_apply_matrix(d, 0.9, e)).norm(), 1e-9);
    }
}

TEST(Kraus, DephasingOnHermitianBasis) {
  const double g = 0.55, t = 0.9;
  const KrausSet k = kraus_from_dilation(dephasing_dilation(g), t);
  for (const CMatrix& x : {CMatrix(I2), pauli_x(), pauli_y(), pauli_z()})
    EXPECT_LE((k.apply(x) - dephasing_oracle(g, t, x)).norm(), 1e-12);
}

TEST(Kraus, RejectsIncompleteSet) {
  EXPECT_THROW(KrausSet(2, {0.5 * CMatrix(I2)}), ValidationError);
}

TEST(Choi, IdentityChannel) {
  const Dilation d = trivial_dilation(HermitianOperator::zero(2));
  const ChoiMatrix c = choi_matrix(d, 1.0);
  CMatrix expect = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) expect(i * 2 + i, j * 2 + j) = 1.0;
  EXPECT_LE((c.matrix() - expect).norm(), 1e-14);
  EXPECT_NEAR(c.matrix().trace().real(), 2.0, 1e-14);
}

TEST(Choi, CompleteDephasingIsBlockDiagonal) {
  const double g = 1.0;
  const ChoiMatrix c = choi_matrix(dephasing_dilation(g), std::numbers::pi / 4.0);
  // Oracle: Kraus pair {Z/sqrt2, I/sqrt2} applied to matrix units.
  CMatrix expect = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMatrix e = CMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      expect.block(2 * i, 2 * j, 2, 2) = 0.5 * e + 0.5 * pauli_z() * e * pauli_z();
    }
  EXPECT_LE((c.matrix() - expect).norm(), 1e-12);
  EXPECT_NEAR(std::abs(c.matrix()(0, 3)), 0.0, 1e-12);
  const ChoiMatrix id = choi_from_unitary(I2);
  // Off-diagonal units |0><1|(x)|0><1| and |1><0|(x)|1><0| survive only in the identity.
  EXPECT_NEAR(channel_distance(id, c), std::sqrt(2.0), 1e-12);
}

TEST(Choi, TwoPathConsistencyAndValidation) {
  Rng rng(5);
  const Dilation d = random_dilation(3, 2, rng);
  EXPECT_LE(channel_distance(choi_matrix(d, 1.4), choi_from_kraus(kraus_from_dilation(d, 1.4))), 1e-9);
  EXPECT_EQ(channel_distance(choi_matrix(d, 1.4), choi_matrix(d, 1.4)), 0.0);
  EXPECT_NO_THROW(ChoiMatrix(2, 0.5 * CMatrix::Identity(4, 4)));  // completely depolarizing
  EXPECT_THROW(ChoiMatrix(2, 0.25 * CMatrix::Identity(4, 4)), ValidationError);
  EXPECT_THROW(channel_distance(choi_from_unitary(I2), choi_from_unitary(CMatrix::Identity(3, 3))),
               DimensionError);
}

TEST(Gauge, IdentityAndRandom) {
  Rng rng(6);
  const Dilation d = dephasing_dilation(0.6, 1.0);
  const Dilation same = gauge_transform(d, UnitaryOperator::identity(2));
  EXPECT_EQ((same.h_tot().matrix() - d.h_tot().matrix()).norm(), 0.0);
  for (int k = 0; k < 5; ++k) {
    const UnitaryOperator v = random_unitary(2, rng);
    const Dilation g = gauge_transform(d, v);
    for (double t : {0.3, 1.0, 2.5}) EXPECT_LE(channel_distance(choi_matrix(d, t), choi_matrix(g, t)), 1e-9);
    EXPECT_NEAR(g.h_tot().matrix().norm(), d.h_tot().matrix().norm(), 1e-12);
    const HermitianOperator h_S(0.5 * pauli_z());
    const CMatrix w = embed_env(v.matrix(), 2);
    const CMatrix lhs = env_surrogate(g.h_tot(), h_S, 2).matrix();
    const CMatrix rhs = w * env_surrogate(d.h_tot(), h_S, 2).matrix() * w.adjoint();
    EXPECT_LE((lhs - rhs).norm(), 1e-10);
  }
  EXPECT_THROW(gauge_transform(d, UnitaryOperator::identity(3)), DimensionError);
}

// ---------------------------------------------------------------------------
// channel-complexity

TEST(EnvSurrogate, Examples) {
  Rng rng(7);
  const HermitianOperator h_S = random_hermitian(2, rng);
  EXPECT_LE(env_surrogate(HermitianOperator(embed_system(h_S.matrix(), 3)), h_S, 3).matrix().norm(), 1e-7);

  const HermitianOperator h_E = random_hermitian(3, rng);
  const HermitianOperator env_only(embed_env(h_E.matrix(), 2));
  const CMatrix k = env_surrogate(env_only, HermitianOperator::zero(2), 3).matrix();
  EXPECT_LE((k - abs_op(env_only).matrix()).norm(), 1e-9);
  EXPECT_NEAR(k.norm(), env_only.matrix().norm(), 1e-9);

  CMatrix diag31 = CMatrix::Zero(2, 2);
  diag31(0, 0) = 3.0;
  diag31(1, 1) = 1.0;
  const CMatrix got = env_surrogate(HermitianOperator(diag31), HermitianOperator(CMatrix::Ones(1, 1)), 2).matrix();
  EXPECT_NEAR(got(0, 0).real(), 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(got(1, 1)), 0.0, 1e-14);
  EXPECT_THROW(env_surrogate(HermitianOperator::zero(4), HermitianOperator::zero(3), 2), DimensionError);
}

TEST(SurrogateNorm, TraceIdentity) {
  Rng rng(8);
  const HermitianOperator h_tot = random_hermitian(4, rng), h_S = random_hermitian(2, rng);
  const auto chk = surrogate_norm_check(h_tot, h_S, 2);
  EXPECT_TRUE(chk.pass);
  // Independent oracle: Tr|X| from the eigenvalues of X.
  const CMatrix hs = embed_system(h_S.matrix(), 2);
  const CMatrix x = h_tot.matrix() * h_tot.matrix() - hs * hs;
  const auto ev = Eigen::SelfAdjointEigenSolver<CMatrix>(x).eigenvalues();
  EXPECT_NEAR(chk.trace, ev.cwiseAbs().sum(), 1e-10);
  const auto zero = trace_identity_check(HermitianOperator::zero(3));
  EXPECT_TRUE(zero.pass);
  EXPECT_EQ(zero.trace, 0.0);
  EXPECT_EQ(zero.root_norm_sq, 0.0);
  const CMatrix root = env_surrogate(h_tot, h_S, 2).matrix();
  EXPECT_NEAR((-root).norm(), root.norm(), 0.0);
}

TEST(ChannelComplexity, EmbeddedClosedSystem) {
  Rng rng(9);
  const HermitianOperator h_S = random_hermitian(2, rng);
  const Dilation d(2, 2, DensityOperator::basis_state(2, 0), HermitianOperator(embed_system(h_S.matrix(), 2)));
  const auto r = channel_complexity(d, h_S, 1.3);
  // t ||h_S||_hs sqrt(d_E) / sqrt(d_tot^2 - 1)
  EXPECT_NEAR(r.value, 1.3 * h_S.matrix().norm() * std::sqrt(2.0) / std::sqrt(15.0), 1e-9);
  EXPECT_NEAR(r.value, r.embedded_unitary_term, 1e-9);
  ASSERT_TRUE(r.system_unitary_term.has_value());
  EXPECT_GT(std::abs(*r.system_unitary_term - r.value), 1e-3);
  const auto triv = channel_complexity(trivial_dilation(h_S), h_S, 1.3);
  EXPECT_NEAR(triv.value, hs_complexity_static(h_S, 1.3, 2), 1e-12);
}

TEST(ChannelComplexity, EnvironmentOnlyAndHomogeneity) {
  Rng rng(10);
  const HermitianOperator h_E = random_hermitian(2, rng);
  const Dilation env(2, 2, DensityOperator::basis_state(2, 0), HermitianOperator(embed_env(h_E.matrix(), 2)));
  EXPECT_LE(std::abs(channel_complexity(env, HermitianOperator::zero(2), 2.0).value), 1e-10);
  EXPECT_LE(noise_complexity(env, HermitianOperator::zero(2), 2.0), 1e-10);

  const Dilation d = random_dilation(2, 2, rng);
  const HermitianOperator h_S = random_hermitian(2, rng);
  const auto a = channel_complexity(d, h_S, 0.7), b = channel_complexity(d, h_S, 1.4);
  EXPECT_NEAR(b.value, 2.0 * a.value, 1e-13 * std::max(1.0, std::abs(b.value)));
  EXPECT_EQ(a.value, a.total_term - a.surrogate_term);
  EXPECT_THROW(channel_complexity(d, h_S, -1.0), ValidationError);
  EXPECT_THROW(channel_complexity(d, random_hermitian(3, rng), 1.0), DimensionError);
}

TEST(NoiseComplexity, TrivialAndDephasing) {
  const HermitianOperator h_S(0.5 * pauli_z());
  EXPECT_LE(noise_complexity(trivial_dilation(h_S), h_S, 2.0), 1e-14);
  const double g = 0.4, omega = 1.0, t = 1.5;
  const double got = noise_complexity(dephasing_dilation(g, omega), h_S, t);
  // ||H||_hs^2 = 4 (omega^2/4 + g^2); H^2 - H_S^2 = g^2 I + omega g I(x)X.
  const double total = t * 2.0 * std::sqrt(omega * omega / 4.0 + g * g) / std::sqrt(15.0);
  const double surr = t * std::sqrt(2.0 * (std::abs(g * g + omega * g) + std::abs(g * g - omega * g))) / std::sqrt(15.0);
  const double ideal = t * std::sqrt(2.0) * omega / 2.0 / std::sqrt(3.0);
  EXPECT_NEAR(got, std::abs(total - surr - ideal), 1e-12);
  EXPECT_GT(got, 0.0);
}

TEST(PathCost, ConstantMatchesClosedForm) {
  const Dilation d = dephasing_dilation(0.3, 0.8);
  const HermitianOperator h_S(0.4 * pauli_z());
  const auto tot = HamiltonianPath::sample([&](double) { return d.h_tot(); }, 0.0, 2.0, 9);
  const auto sys = HamiltonianPath::sample([&](double) { return h_S; }, 0.0, 2.0, 9);
  EXPECT_NEAR(surrogate_path_cost(tot, sys, 2).value, channel_complexity(d, h_S, 2.0).value, 1e-12);
}

TEST(PathCost, DecoupledPath) {
  auto hs = [](double s) { return HermitianOperator((0.5 + 0.3 * std::cos(s)) * pauli_z()); };
  auto ht = [&](double s) { return HermitianOperator(embed_system(hs(s).matrix(), 2)); };
  const auto r = surrogate_path_cost(HamiltonianPath::sample(ht, 0.0, 1.0, 2001),
                                     HamiltonianPath::sample(hs, 0.0, 1.0, 2001), 2);
  // int_0^1 (0.5 + 0.3 cos s) * 2 ds / sqrt(15)
  EXPECT_NEAR(r.value, 2.0 * (0.5 + 0.3 * std::sin(1.0)) / std::sqrt(15.0), 1e-6);
}

TEST(PathCost, ModulatedCouplingAgainstDenseQuadrature) {
  const double omega = 1.0;
  auto g = [](double s) { return 0.2 + 0.6 * std::sin(s) * std::sin(s); };
  auto ht = [&](double s) {
    return HermitianOperator(g(s) * tensor(pauli_z(), pauli_x()) + 0.5 * omega * tensor(pauli_z(), I2));
  };
  auto hs = [&](double) { return HermitianOperator(0.5 * omega * pauli_z()); };
  const auto r = surrogate_path_cost(HamiltonianPath::sample(ht, 0.0, 2.0, 2001),
                                     HamiltonianPath::sample(hs, 0.0, 2.0, 2001), 2);
  // Composite Simpson on the closed-form integrand.
  auto f = [&](double s) {
    const double gs = g(s);
    return 2.0 * std::sqrt(omega * omega / 4.0 + gs * gs) -
           std::sqrt(2.0 * (std::abs(gs * gs + omega * gs) + std::abs(gs * gs - omega * gs)));
  };
  const int n = 20000;
  const double h = 2.0 / n;
  double acc = f(0.0) + f(2.0);
  for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * h);
  EXPECT_NEAR(r.value, acc * h / 3.0 / std::sqrt(15.0), 1e-6);
  EXPECT_THROW(surrogate_path_cost(HamiltonianPath::sample(ht, 0.0, 2.0, 11),
                                   HamiltonianPath::sample(hs, 0.0, 2.0, 12), 2),
               ValidationError);
}

TEST(Postulates, Examples) {
  Rng rng(11);
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
  const Dilation d = random_dilation(2, 2, rng);
  const auto rep = postulate_check(d, random_hermitian(2, rng), grid);
  EXPECT_TRUE(rep.p3.pass);
  EXPECT_LE(rep.p3.residual, 1e-9);
  EXPECT_TRUE(rep.p4.pass);

  const HermitianOperator h_S = random_hermitian(2, rng);
  const auto triv = postulate_check(trivial_dilation(h_S), h_S, grid);
  EXPECT_TRUE(triv.p1.applicable);
  EXPECT_TRUE(triv.p1.pass);
  EXPECT_EQ(triv.p1.residual, 0.0);

  const Dilation env(2, 2, DensityOperator::basis_state(2, 0),
                     HermitianOperator(embed_env(random_hermitian(2, rng).matrix(), 2)));
  const auto e = postulate_check(env, HermitianOperator::zero(2), grid);
  EXPECT_TRUE(e.p2.applicable);
  EXPECT_TRUE(e.p2.pass);
  EXPECT_TRUE(e.all_pass());
}

TEST(Properties, GaugeInvarianceOfValueAndSurrogateNorm) {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int d_S = 2 + trial % 2, d_E = 1 + trial % 3;
    const Dilation d = random_dilation(d_S, d_E, rng);
    const HermitianOperator h_S = random_hermitian(d_S, rng);
    const Dilation g = gauge_transform(d, random_unitary(d_E, rng));
    EXPECT_NEAR(channel_complexity(d, h_S, 1.0).value, channel_complexity(g, h_S, 1.0).value, 1e-9);
    EXPECT_NEAR(env_surrogate(d.h_tot(), h_S, d_E).matrix().norm(),
                env_surrogate(g.h_tot(), h_S, d_E).matrix().norm(), 1e-9);
  }
}
