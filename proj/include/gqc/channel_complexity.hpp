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

// Subtractive channel complexity of a dilation,
//
//     G(Lambda_t; D) = G_hs(exp(-i t H_tot)) - G_hs(exp(-i t K)),
//     K = sqrt(|H_tot^2 - (H_S (x) I_E)^2|),
//
// with both terms in the Hilbert-Schmidt geometry of dimension d_tot, plus
// the noise complexity, the path-integrated variant for sampled generators,
// and a postulate checker.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gqc/core.hpp"
#include "gqc/dilation.hpp"
#include "gqc/geometry.hpp"
#include "gqc/random.hpp"

namespace gqc {

namespace detail {
inline double hs_prefactor(int d) { return 1.0 / std::sqrt(static_cast<double>(d) * d - 1.0); }
}  // namespace detail

/// Environmental surrogate sqrt(|h_tot^2 - (h_S (x) I_E)^2|).
inline HermitianOperator env_surrogate(const HermitianOperator& h_tot, const HermitianOperator& h_S,
                                       int d_E) {
  if (h_S.dim() * d_E != h_tot.dim())
    throw DimensionError("env_surrogate: h_S dimension " + std::to_string(h_S.dim()) +
                         " times d_E = " + std::to_string(d_E) + " does not match h_tot dimension " +
                         std::to_string(h_tot.dim()));
  const CMatrix hs = embed_system(h_S.matrix(), d_E);
  const CMatrix x = h_tot.matrix() * h_tot.matrix() - hs * hs;
  return sqrt_psd(abs_op(HermitianOperator::symmetrized(x)));
}

struct SurrogateNormCheck {
  bool pass = false;
  double root_norm_sq = 0.0;  // ||sqrt(X)||_hs^2
  double trace = 0.0;         // Tr X
  double residual = 0.0;
};

/// ||sqrt(X)||_hs^2 = Tr X for a PSD X (the norm shared by every Hermitian
/// square root of X, including -sqrt(X)).
inline SurrogateNormCheck trace_identity_check(const HermitianOperator& x, double tol = 1e-9) {
  const HermitianOperator root = sqrt_psd(x);
  SurrogateNormCheck out;
  out.root_norm_sq = root.matrix().squaredNorm();
  out.trace = x.matrix().trace().real();
  out.residual = std::abs(out.root_norm_sq - out.trace);
  out.pass = out.residual <= tol * std::max(1.0, std::abs(out.trace));
  return out;
}

inline SurrogateNormCheck surrogate_norm_check(const HermitianOperator& h_tot,
                                               const HermitianOperator& h_S, int d_E,
                                               double tol = 1e-9) {
  if (h_S.dim() * d_E != h_tot.dim()) throw DimensionError("surrogate_norm_check: dimension mismatch");
  const CMatrix hs = embed_system(h_S.matrix(), d_E);
  const HermitianOperator x =
      abs_op(HermitianOperator::symmetrized(h_tot.matrix() * h_tot.matrix() - hs * hs));
  return trace_identity_check(x, tol);
}

struct ChannelComplexityReport {
  double t = 0.0;
  double total_term = 0.0;      // G_hs(exp(-i t H_tot))
  double surrogate_term = 0.0;  // G_hs(exp(-i t K))
  double value = 0.0;           // total_term - surrogate_term, never clamped
  std::optional<double> noise_value;
  // t ||H_S (x) I_E||_hs / sqrt(d_tot^2 - 1): the closed-system value at the
  // embedded level. Equals `system_unitary_term` only when d_E = 1.
  double embedded_unitary_term = 0.0;
  // t ||H_S||_hs / sqrt(d_S^2 - 1), absent when d_S = 1.
  std::optional<double> system_unitary_term;
  bool negative_flag = false;  // value < -1e-10
};

inline ChannelComplexityReport channel_complexity(const Dilation& d, const HermitianOperator& h_S,
                                                  double t) {
  if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
  if (h_S.dim() != d.d_S())
    throw DimensionError("channel_complexity: h_S dimension " + std::to_string(h_S.dim()) +
                         " does not match d_S = " + std::to_string(d.d_S()));
  if (d.d_tot() < 2) throw ValidationError("d_tot", "must be >= 2");
  const double pre = detail::hs_prefactor(d.d_tot());
  const HermitianOperator k = env_surrogate(d.h_tot(), h_S, d.d_E());

  ChannelComplexityReport r;
  r.t = t;
  r.total_term = t * pre * hs_norm(d.h_tot().matrix());
  r.surrogate_term = t * pre * hs_norm(k.matrix());
  r.value = r.total_term - r.surrogate_term;
  r.embedded_unitary_term = t * pre * hs_norm(embed_system(h_S.matrix(), d.d_E()));
  if (d.d_S() >= 2) {
    r.system_unitary_term = hs_complexity_static(h_S, t, d.d_S());
    r.noise_value = std::abs(r.value - *r.system_unitary_term);
  }
  r.negative_flag = r.value < -1e-10;
  return r;
}

/// |G(Lambda_t; D) - G_hs(U_S(t))| with the ideal term normalized by d_S.
inline double noise_complexity(const Dilation& d, const HermitianOperator& h_S, double t) {
  if (d.d_S() < 2) throw ValidationError("d_S", "noise complexity needs d_S >= 2");
  return *channel_complexity(d, h_S, t).noise_value;
}

struct PathCostReport {
  double total_integral = 0.0;      // int ||H_tot(s)||_hs ds / sqrt(d_tot^2 - 1)
  double surrogate_integral = 0.0;  // int ||K(s)||_hs ds / sqrt(d_tot^2 - 1)
  double value = 0.0;
};

/// Time-dependent extension: the instantaneous surrogate is integrated along
/// the sampled path by the trapezoidal rule. `h_S_path` lives on the system
/// space and is embedded as H_S(s) (x) I_E.
inline PathCostReport surrogate_path_cost(const HamiltonianPath& h_tot_path,
                                          const HamiltonianPath& h_S_path, int d_E) {
  if (h_tot_path.size() != h_S_path.size() || h_tot_path.times() != h_S_path.times())
    throw ValidationError("path", "h_tot and h_S grids differ");
  if (h_S_path.dim() * d_E != h_tot_path.dim())
    throw DimensionError("surrogate_path_cost: dimension mismatch");
  const int d_tot = h_tot_path.dim();
  std::vector<double> ft, fk;
  for (std::size_t k = 0; k < h_tot_path.size(); ++k) {
    const auto& ht = h_tot_path.generators()[k];
    ft.push_back(hs_norm(ht.matrix()));
    fk.push_back(hs_norm(env_surrogate(ht, h_S_path.generators()[k], d_E).matrix()));
  }
  PathCostReport r;
  const double pre = detail::hs_prefactor(d_tot);
  r.total_integral = pre * trapezoid(h_tot_path.times(), ft);
  r.surrogate_integral = pre * trapezoid(h_tot_path.times(), fk);
  r.value = r.total_integral - r.surrogate_integral;
  return r;
}

// ---------------------------------------------------------------------------
// postulates

struct PostulateResult {
  bool applicable = false;
  bool pass = false;
  double residual = 0.0;
};

struct PostulateReport {
  PostulateResult p1;  // closed-system consistency
  PostulateResult p2;  // environment-only neutrality
  PostulateResult p3;  // gauge stability
  PostulateResult p4;  // variational surrogate norm identity
  bool all_pass() const {
    return (!p1.applicable || p1.pass) && (!p2.applicable || p2.pass) && p3.pass && p4.pass;
  }
};

struct PostulateOptions {
  int gauges = 10;
  std::uint64_t seed = 7;
  double structure_tol = 1e-10;  // "h_tot is of product form" detection
  double value_tol = 1e-10;      // P1 / P2 residual bound
  double gauge_tol = 1e-9;       // P3 residual bound
};

/// h_tot == I_S (x) Tr_S(h_tot)/d_S within tol.
inline bool is_environment_only(const Dilation& d, double tol) {
  CMatrix h_E = CMatrix::Zero(d.d_E(), d.d_E());
  const CMatrix& h = d.h_tot().matrix();
  for (int i = 0; i < d.d_S(); ++i) h_E += h.block(i * d.d_E(), i * d.d_E(), d.d_E(), d.d_E());
  h_E /= static_cast<double>(d.d_S());
  return (h - embed_env(h_E, d.d_S())).norm() <= tol * std::max(1.0, h.norm());
}

inline PostulateReport postulate_check(const Dilation& d, const HermitianOperator& h_S,
                                       const std::vector<double>& t_grid,
                                       const PostulateOptions& opts = {}) {
  if (t_grid.empty()) throw ValidationError("t_grid", "must not be empty");
  PostulateReport rep;
  const CMatrix embedded = embed_system(h_S.matrix(), d.d_E());
  const double hnorm = std::max(1.0, d.h_tot().matrix().norm());

  // P1: h_tot = h_S (x) I_E; compare with the closed-system value at the
  // embedded level (identical to G_hs(U_S(t)) for d_E = 1).
  rep.p1.applicable = (d.h_tot().matrix() - embedded).norm() <= opts.structure_tol * hnorm;
  if (rep.p1.applicable) {
    for (double t : t_grid) {
      const auto r = channel_complexity(d, h_S, t);
      rep.p1.residual = std::max(rep.p1.residual, std::abs(r.value - r.embedded_unitary_term));
    }
    rep.p1.pass = rep.p1.residual <= opts.value_tol;
  }

  // P2: h_tot = I_S (x) h_E and h_S = 0.
  rep.p2.applicable = h_S.matrix().norm() <= opts.structure_tol &&
                      is_environment_only(d, opts.structure_tol);
  if (rep.p2.applicable) {
    for (double t : t_grid)
      rep.p2.residual = std::max(rep.p2.residual, std::abs(channel_complexity(d, h_S, t).value));
    rep.p2.pass = rep.p2.residual <= opts.value_tol;
  }

  // P3: random environment gauges leave the value unchanged.
  rep.p3.applicable = true;
  Rng rng(opts.seed);
  for (int g = 0; g < opts.gauges; ++g) {
    const Dilation dg = gauge_transform(d, random_unitary(d.d_E(), rng));
    for (double t : t_grid) {
      const double a = channel_complexity(d, h_S, t).value;
      const double b = channel_complexity(dg, h_S, t).value;
      rep.p3.residual = std::max(rep.p3.residual, std::abs(a - b));
    }
  }
  rep.p3.pass = rep.p3.residual <= opts.gauge_tol;

  // P4: the surrogate attains the common norm of all square roots.
  rep.p4.applicable = true;
  const auto chk = surrogate_norm_check(d.h_tot(), h_S, d.d_E());
  rep.p4.residual = chk.residual;
  rep.p4.pass = chk.pass;
  return rep;
}

}  // namespace gqc
