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

#pragma once

// Linear-entropy coherence in the computational basis and the coherence
// lower bounds on unitary complexity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gqc/core.hpp"
#include "gqc/geometry.hpp"
#include "gqc/random.hpp"

namespace gqc {

/// Zeroes the off-diagonal entries (complete dephasing in the computational basis).
inline CMatrix dephase(const CMatrix& m) { return CMatrix(m.diagonal().asDiagonal()); }

inline DensityOperator dephase(const DensityOperator& rho) {
  return DensityOperator(dephase(rho.matrix()), {}, "dephased state");
}

struct CoherenceSplit {
  CMatrix diagonal;
  CMatrix offdiagonal;
};

inline CoherenceSplit coherence_split(const DensityOperator& rho) {
  CoherenceSplit s;
  s.diagonal = dephase(rho.matrix());
  s.offdiagonal = rho.matrix() - s.diagonal;
  s.offdiagonal.diagonal().setZero();
  return s;
}

struct CoherenceReport {
  double c_value = 0.0;            // Tr rho^2 - Tr E(rho)^2
  double s_linear_rho = 0.0;       // 1 - Tr rho^2
  double s_linear_dephased = 0.0;  // 1 - Tr E(rho)^2
  double offdiag_norm_sq = 0.0;    // ||tau||_hs^2
};

inline CoherenceReport coherence(const DensityOperator& rho) {
  const CoherenceSplit s = coherence_split(rho);
  CoherenceReport r;
  const double pur = rho.matrix().squaredNorm();
  const double pur_d = s.diagonal.squaredNorm();
  r.s_linear_rho = 1.0 - pur;
  r.s_linear_dephased = 1.0 - pur_d;
  r.c_value = pur - pur_d;
  r.offdiag_norm_sq = s.offdiagonal.squaredNorm();
  if (std::abs(r.c_value - r.offdiag_norm_sq) > 1e-10)
    throw NumericalError("coherence: C and ||tau||^2 disagree by " +
                         std::to_string(std::abs(r.c_value - r.offdiag_norm_sq)));
  return r;
}

/// sqrt(C) as ||tau||_hs, which avoids cancellation near C = 0.
inline double sqrt_coherence(const CMatrix& rho) {
  CMatrix tau = rho;
  tau.diagonal().setZero();
  return tau.norm();
}

// ---------------------------------------------------------------------------
// growth inequality

struct GrowthRow {
  double t = 0.0;
  double sqrt_c = 0.0;
  double budget = 0.0;  // 2 int_0^t ||H(s)||_hs ds
  double margin = 0.0;  // budget - (sqrtC(t) - sqrtC(0)) - quadrature error
  bool pass = false;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  int substeps = 0;              // per grid interval at the accepted level
  double quadrature_error = 0.0;  // max |sqrtC_L - sqrtC_{L+1}| on the grid
  double max_commutator_ratio = 0.0;  // max ||[H, rho]||_hs / (2 ||H||_hs) along the trajectory
  bool pass = false;
};

namespace detail {

struct Trajectory {
  std::vector<double> sqrt_c;
  double commutator_ratio = 0.0;
};

inline Trajectory integrate_path(const HamiltonianPath& path, const CMatrix& rho0, int substeps) {
  Trajectory tr;
  CMatrix rho = rho0;
  tr.sqrt_c.push_back(sqrt_coherence(rho));
  const auto& ts = path.times();
  const auto& hs = path.generators();
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double dt = (ts[k] - ts[k - 1]) / substeps;
    for (int j = 0; j < substeps; ++j) {
      const double w = (j + 0.5) / substeps;
      const HermitianOperator h =
          HermitianOperator::symmetrized((1.0 - w) * hs[k - 1].matrix() + w * hs[k].matrix());
      const double hn = hs_norm(h.matrix());
      if (hn > 0.0)
        tr.commutator_ratio =
            std::max(tr.commutator_ratio, hs_norm(commutator(h.matrix(), rho)) / (2.0 * hn));
      const CMatrix u = unitary_evolve(h, dt).matrix();
      rho = u * rho * u.adjoint();
    }
    tr.sqrt_c.push_back(sqrt_coherence(rho));
  }
  return tr;
}

}  // namespace detail

/// Integrates rho(t) along the linearly interpolated path with midpoint
/// piecewise-constant exponential steps, halving the step until the grid
/// values of sqrt(C) move by less than `quad_tol`.
inline GrowthReport coherence_growth_check(const HamiltonianPath& path, const DensityOperator& rho0,
                                           double quad_tol = 1e-10, int max_level = 12) {
  if (rho0.dim() != path.dim())
    throw DimensionError("coherence_growth_check: state and path dimensions differ");
  int level = 0;
  detail::Trajectory cur = detail::integrate_path(path, rho0.matrix(), 1);
  double err = 0.0;
  for (;;) {
    detail::Trajectory next = detail::integrate_path(path, rho0.matrix(), 1 << (level + 1));
    err = 0.0;
    for (std::size_t k = 0; k < cur.sqrt_c.size(); ++k)
      err = std::max(err, std::abs(cur.sqrt_c[k] - next.sqrt_c[k]));
    cur = std::move(next);
    ++level;
    if (err <= quad_tol) break;
    if (level >= max_level) break;
  }

  GrowthReport rep;
  rep.substeps = 1 << level;
  rep.quadrature_error = err;
  rep.max_commutator_ratio = cur.commutator_ratio;
  const auto& ts = path.times();
  double integral = 0.0;
  bool all = true;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (k > 0)
      integral += 0.5 * (ts[k] - ts[k - 1]) *
                  (hs_norm(path.generators()[k].matrix()) + hs_norm(path.generators()[k - 1].matrix()));
    GrowthRow r;
    r.t = ts[k];
    r.sqrt_c = cur.sqrt_c[k];
    r.budget = 2.0 * integral;
    r.margin = r.budget - (r.sqrt_c - cur.sqrt_c[0]) - err;
    r.pass = r.margin >= -1e-12;
    all = all && r.pass;
    rep.rows.push_back(r);
  }
  // A quadrature error larger than the smallest positive budget means the
  // grid cannot resolve the inequality.
  for (const auto& r : rep.rows)
    if (r.budget > 0.0 && err > r.budget)
      throw NumericalError("coherence_growth_check: grid too coarse (quadrature error " +
                           std::to_string(err) + " exceeds budget " + std::to_string(r.budget) +
                           " at t = " + std::to_string(r.t) + ")");
  rep.pass = all;
  return rep;
}

// ---------------------------------------------------------------------------
// lower bounds

/// (sqrt C(rho_t) - sqrt C(rho_0)) / (2 sqrt(d^2 - 1)); not clamped.
inline double lower_bound_sqrt_coherence(const DensityOperator& rho0, const DensityOperator& rho_t, int d) {
  if (rho0.dim() != d || rho_t.dim() != d)
    throw DimensionError("lower_bound_sqrt_coherence: states must have dimension d = " + std::to_string(d));
  if (d < 2) throw ValidationError("d", "must be >= 2");
  const double num = std::sqrt(std::max(0.0, coherence(rho_t).c_value)) -
                     std::sqrt(std::max(0.0, coherence(rho0).c_value));
  return num / (2.0 * std::sqrt(static_cast<double>(d) * d - 1.0));
}

inline DensityOperator evolve_state(const HermitianOperator& h, const DensityOperator& rho0, double t) {
  const CMatrix u = unitary_evolve(h, t).matrix();
  return DensityOperator(u * rho0.matrix() * u.adjoint(), {}, "evolved state");
}

/// |C(rho(t)) - C(rho_0)| / (sqrt(d^2 - 1) ||h||_hs) with rho(t) = e^{-ith} rho_0 e^{ith}.
inline double lower_bound_coherence_change(const HermitianOperator& h, const DensityOperator& rho0, double t, int d) {
  if (h.dim() != d || rho0.dim() != d) throw DimensionError("lower_bound_coherence_change: dimension mismatch");
  if (d < 2) throw ValidationError("d", "must be >= 2");
  const double hn = hs_norm(h.matrix());
  if (!(hn > 0.0)) throw ValidationError("h", "zero generator");
  const DensityOperator rt = evolve_state(h, rho0, t);
  return std::abs(coherence(rt).c_value - coherence(rho0).c_value) /
         (std::sqrt(static_cast<double>(d) * d - 1.0) * hn);
}

struct BoundCheck {
  double bound = 0.0;
  double complexity = 0.0;
  double margin = 0.0;  // complexity - bound
  bool pass = false;
};

inline BoundCheck verify_lower_bound_coherence_change(const HermitianOperator& h, const DensityOperator& rho0,
                                          double t, int d) {
  BoundCheck c;
  c.bound = lower_bound_coherence_change(h, rho0, t, d);
  c.complexity = hs_complexity_static(h, t, d);
  c.margin = c.complexity - c.bound;
  c.pass = c.margin >= -1e-12;
  return c;
}

inline BoundCheck verify_lower_bound_sqrt_coherence(const HermitianOperator& h, const DensityOperator& rho0,
                                              double t, int d) {
  BoundCheck c;
  c.bound = lower_bound_sqrt_coherence(rho0, evolve_state(h, rho0, t), d);
  c.complexity = hs_complexity_static(h, t, d);
  c.margin = c.complexity - c.bound;
  c.pass = c.margin >= -1e-12;
  return c;
}

struct LowerBoundSweep {
  int trials = 0;
  int sqrt_violations = 0;
  int change_violations = 0;
  double min_sqrt_margin = 0.0;
  double min_change_margin = 0.0;
};

/// Seeded qubit (or qudit) trajectories: random H, random rho_0, t in (0, 3].
/// sqrt(C) bound violations are failures; coherence-change violations are only counted.
inline LowerBoundSweep lower_bound_sweep(int trials, std::uint64_t seed, int d = 2) {
  Rng rng(seed);
  std::uniform_real_distribution<double> ut(0.05, 3.0), us(0.1, 2.0);
  LowerBoundSweep s;
  s.trials = trials;
  s.min_sqrt_margin = s.min_change_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const HermitianOperator h = random_hermitian(d, rng, us(rng));
    const DensityOperator rho0 = (k % 2 == 0) ? DensityOperator::basis_state(d, 0) : random_density(d, rng);
    const double t = ut(rng);
    const BoundCheck a = verify_lower_bound_sqrt_coherence(h, rho0, t, d);
    const BoundCheck m = verify_lower_bound_coherence_change(h, rho0, t, d);
    if (!a.pass) ++s.sqrt_violations;
    if (!m.pass) ++s.change_violations;
    s.min_sqrt_margin = std::min(s.min_sqrt_margin, a.margin);
    s.min_change_margin = std::min(s.min_change_margin, m.margin);
  }
  return s;
}

}  // namespace gqc
