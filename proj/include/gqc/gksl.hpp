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

// Markovian (GKSL) generators, their semigroups, the standard finite
// dilation H_S (x) I + I (x) H_E + sum (L (x) B^dag + L^dag (x) B), the
// growth bounds on the channel complexity of that dilation, and the
// single-qubit benchmark channels.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gqc/channel_complexity.hpp"
#include "gqc/core.hpp"
#include "gqc/dilation.hpp"
#include "gqc/intrinsic.hpp"
#include "gqc/report.hpp"

namespace gqc {

class GkslGenerator {
 public:
  GkslGenerator(HermitianOperator h_S, std::vector<CMatrix> lindblad_ops)
      : h_S_(std::move(h_S)), ops_(std::move(lindblad_ops)) {
    for (std::size_t a = 0; a < ops_.size(); ++a) {
      if (ops_[a].rows() != h_S_.dim() || ops_[a].cols() != h_S_.dim())
        throw ValidationError("lindblad_ops[" + std::to_string(a) + "]",
                              "dimension does not match h_S");
      check_finite(ops_[a], "lindblad_ops[" + std::to_string(a) + "]");
    }
  }

  int dim() const noexcept { return h_S_.dim(); }
  const HermitianOperator& h_S() const noexcept { return h_S_; }
  const std::vector<CMatrix>& lindblad_ops() const noexcept { return ops_; }

 private:
  HermitianOperator h_S_;
  std::vector<CMatrix> ops_;
};

/// -i[H, rho] + sum (L rho L^dag - {L^dag L, rho}/2)
inline CMatrix gksl_apply(const GkslGenerator& g, const CMatrix& rho) {
  if (rho.rows() != g.dim() || rho.cols() != g.dim())
    throw DimensionError("gksl_apply: state dimension does not match generator");
  CMatrix out = -kI * commutator(g.h_S().matrix(), rho);
  for (const auto& l : g.lindblad_ops()) {
    const CMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * anticommutator(ldl, rho);
  }
  return out;
}

inline CMatrix gksl_apply(const GkslGenerator& g, const DensityOperator& rho) {
  return gksl_apply(g, rho.matrix());
}

/// Column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).
inline CMatrix liouvillian(const GkslGenerator& g) {
  const int d = g.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix& h = g.h_S().matrix();
  CMatrix lv = -kI * (tensor(id, h) - tensor(h.transpose(), id));
  for (const auto& l : g.lindblad_ops()) {
    const CMatrix ldl = l.adjoint() * l;
    lv += tensor(l.conjugate(), l) - 0.5 * tensor(id, ldl) - 0.5 * tensor(ldl.transpose(), id);
  }
  return lv;
}

inline CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, int d) { return Eigen::Map<const CMatrix>(v.data(), d, d); }

inline DensityOperator semigroup_evolve(const GkslGenerator& g, const DensityOperator& rho0,
                                        double t, const ToleranceConfig& tol = {}) {
  if (rho0.dim() != g.dim())
    throw DimensionError("semigroup_evolve: state dimension does not match generator");
  if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
  const CMatrix prop = expm(t * liouvillian(g));
  return DensityOperator(unvec(prop * vec(rho0.matrix()), g.dim()), tol, "evolved state");
}

/// Gamma = sum ||L||_op^2
inline double dissipator_scale(const GkslGenerator& g) {
  double acc = 0.0;
  for (const auto& l : g.lindblad_ops()) {
    const double n = op_norm(l);
    acc += n * n;
  }
  return acc;
}

/// sum ||L||_hs^2, exactly invariant under unitary mixing of the L's.
inline double dissipator_scale_hs(const GkslGenerator& g) {
  double acc = 0.0;
  for (const auto& l : g.lindblad_ops()) acc += l.squaredNorm();
  return acc;
}

/// L'_a = sum_b u_ab L_b
inline GkslGenerator mix_lindblad_ops(const GkslGenerator& g, const CMatrix& u) {
  const auto m = static_cast<Eigen::Index>(g.lindblad_ops().size());
  if (u.rows() != m || u.cols() != m) throw DimensionError("mix_lindblad_ops: u must be m x m");
  std::vector<CMatrix> out;
  for (Eigen::Index a = 0; a < m; ++a) {
    CMatrix acc = CMatrix::Zero(g.dim(), g.dim());
    for (Eigen::Index b = 0; b < m; ++b) acc += u(a, b) * g.lindblad_ops()[static_cast<std::size_t>(b)];
    out.push_back(acc);
  }
  return GkslGenerator(g.h_S(), std::move(out));
}

inline double sum_lindblad_hs(const GkslGenerator& g) {
  double acc = 0.0;
  for (const auto& l : g.lindblad_ops()) acc += hs_norm(l);
  return acc;
}

// ---------------------------------------------------------------------------
// standard dilation

struct StandardDilationSpec {
  HermitianOperator h_E;
  std::vector<CMatrix> bath_ops;  // one B_a per Lindblad operator
  double beta = 1.0;              // certified cap ||B_a||_op <= beta
  std::optional<DensityOperator> rho_E;  // ground state of h_E when absent

  int d_E() const { return h_E.dim(); }
};

/// Environment model shared across benchmark rows; replicated per Lindblad
/// operator by `spec_for`.
struct BathModel {
  int d_E = 2;
  CMatrix h_E = CMatrix::Zero(2, 2);
  CMatrix bath_op = sigma_minus();  // scaled by beta
  double beta = 1.0;
  std::optional<CMatrix> rho_E = CMatrix(DensityOperator::basis_state(2, 0).matrix());

  StandardDilationSpec spec_for(std::size_t m) const {
    StandardDilationSpec s{HermitianOperator(h_E, {}, "bath.h_E"),
                           std::vector<CMatrix>(m, beta * bath_op), beta, std::nullopt};
    if (rho_E) s.rho_E = DensityOperator(*rho_E, {}, "bath.rho_E");
    return s;
  }
};

inline DensityOperator ground_state(const HermitianOperator& h) {
  const SpectralDecomposition s = eig_hermitian(h);
  return DensityOperator::pure(s.eigenvectors.col(0));
}

inline void validate_spec(const GkslGenerator& g, const StandardDilationSpec& spec) {
  if (spec.bath_ops.size() != g.lindblad_ops().size())
    throw ValidationError("bath_ops", "count " + std::to_string(spec.bath_ops.size()) +
                                          " does not match Lindblad count " +
                                          std::to_string(g.lindblad_ops().size()));
  for (std::size_t a = 0; a < spec.bath_ops.size(); ++a) {
    const auto& b = spec.bath_ops[a];
    const std::string f = "bath_ops[" + std::to_string(a) + "]";
    if (b.rows() != spec.d_E() || b.cols() != spec.d_E())
      throw ValidationError(f, "dimension does not match h_E");
    if (op_norm(b) > spec.beta + 1e-12)
      throw ValidationError(f, "operator norm " + std::to_string(op_norm(b)) +
                                   " exceeds beta = " + std::to_string(spec.beta));
  }
  if (spec.rho_E && spec.rho_E->dim() != spec.d_E())
    throw ValidationError("rho_E", "dimension does not match h_E");
}

inline Dilation standard_dilation(const GkslGenerator& g, const StandardDilationSpec& spec) {
  validate_spec(g, spec);
  const int d_S = g.dim(), d_E = spec.d_E();
  CMatrix h = embed_system(g.h_S().matrix(), d_E) + embed_env(spec.h_E.matrix(), d_S);
  for (std::size_t a = 0; a < spec.bath_ops.size(); ++a) {
    const CMatrix& l = g.lindblad_ops()[a];
    const CMatrix& b = spec.bath_ops[a];
    h += tensor(l, b.adjoint()) + tensor(l.adjoint(), b);
  }
  DensityOperator rho = spec.rho_E ? *spec.rho_E : ground_state(spec.h_E);
  return Dilation(d_S, d_E, std::move(rho), HermitianOperator(h, {}, "h_tot"));
}

struct GrowthBound {
  double bound_full = 0.0;
  double bound_reduced = 0.0;
};

inline GrowthBound growth_bound(const GkslGenerator& g, const StandardDilationSpec& spec, double t) {
  validate_spec(g, spec);
  if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
  const int d_S = g.dim(), d_E = spec.d_E();
  const double pre = t * detail::hs_prefactor(d_S * d_E);
  const double dissip = 2.0 * spec.beta * sum_lindblad_hs(g);
  GrowthBound b;
  b.bound_full = pre * (hs_norm(embed_system(g.h_S().matrix(), d_E)) + dissip +
                        hs_norm(embed_env(spec.h_E.matrix(), d_S)));
  b.bound_reduced = pre * (hs_norm(g.h_S().matrix()) * std::sqrt(static_cast<double>(d_E)) + dissip);
  return b;
}

/// Operator-norm form of the reduced bound,
///     t / sqrt(d_tot^2 - 1) (||H_S|| sqrt(d_E) + 2 beta sqrt(d_S) sqrt(m) sqrt(Gamma)).
/// Throws NumericalError if it fails to dominate the reduced bound.
inline double coarse_bound(const GkslGenerator& g, const StandardDilationSpec& spec, double t) {
  const GrowthBound gb = growth_bound(g, spec, t);
  const int d_S = g.dim(), d_E = spec.d_E();
  const double m = static_cast<double>(g.lindblad_ops().size());
  const double pre = t * detail::hs_prefactor(d_S * d_E);
  const double coarse =
      pre * (hs_norm(g.h_S().matrix()) * std::sqrt(static_cast<double>(d_E)) +
             2.0 * spec.beta * std::sqrt(static_cast<double>(d_S)) * std::sqrt(m) *
                 std::sqrt(dissipator_scale(g)));
  if (coarse < gb.bound_reduced * (1.0 - 1e-12) - 1e-15)
    throw NumericalError("coarse_bound: Cauchy-Schwarz domination violated");
  return coarse;
}

/// Coarse estimate of the intrinsic complexity of any admissible class that
/// contains the standard dilation; the spec must satisfy the dimension, norm
/// and energy caps of `c`.
inline double coarse_intrinsic_bound(const GkslGenerator& g, const StandardDilationSpec& spec,
                                     const AdmissibleConstraints& c, double t) {
  const Dilation d = standard_dilation(g, spec);
  if (d.d_E() > c.d_E_max)
    throw ValidationError("spec", "environment dimension " + std::to_string(d.d_E()) +
                                      " exceeds d_E_max = " + std::to_string(c.d_E_max));
  const double hop = detail::op_norm_hermitian(d.h_tot().matrix());
  if (hop > c.J_max * (1.0 + 1e-9))
    throw ValidationError("spec", "||H_tot||_op = " + std::to_string(hop) + " exceeds J_max = " +
                                      std::to_string(c.J_max));
  if (c.energy_declared()) {
    if (c.h_E->dim() != d.d_E()) throw ValidationError("spec", "h_E dimension differs from constraints");
    const double en = (d.rho_E().matrix() * c.h_E->matrix()).trace().real();
    if (en > *c.E_max + 1e-12)
      throw ValidationError("spec", "environment energy " + std::to_string(en) + " exceeds E_max");
  }
  return coarse_bound(g, spec, t);
}

/// Target family of the dilation channel built from (g, spec).
inline ChannelTarget target_from_standard_dilation(const GkslGenerator& g,
                                                   const StandardDilationSpec& spec,
                                                   std::vector<double> t_grid) {
  return target_from_dilation(standard_dilation(g, spec), std::move(t_grid));
}

/// Semigroup channels e^{tL} on the grid (no seed dilation).
inline ChannelTarget target_from_generator(const GkslGenerator& g, std::vector<double> t_grid) {
  ChannelTarget out{g.dim(), std::move(t_grid), {}, std::nullopt};
  const CMatrix lv = liouvillian(g);
  for (double t : out.t_grid) {
    const CMatrix prop = expm(t * lv);
    out.chois.push_back(choi_from_map(g.dim(), [&](const CMatrix& x) {
      return unvec(prop * vec(x), g.dim());
    }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// benchmarks

enum class BenchmarkKind { dephasing, amplitude_damping, depolarizing, pauli };

inline std::string to_string(BenchmarkKind k) {
  switch (k) {
    case BenchmarkKind::dephasing: return "dephasing";
    case BenchmarkKind::amplitude_damping: return "amplitude_damping";
    case BenchmarkKind::depolarizing: return "depolarizing";
    case BenchmarkKind::pauli: return "pauli";
  }
  return "unknown";
}

inline BenchmarkKind benchmark_kind_from_string(const std::string& s) {
  if (s == "dephasing") return BenchmarkKind::dephasing;
  if (s == "amplitude_damping") return BenchmarkKind::amplitude_damping;
  if (s == "depolarizing") return BenchmarkKind::depolarizing;
  if (s == "pauli") return BenchmarkKind::pauli;
  throw ValidationError("kind", "unknown benchmark kind '" + s + "'");
}

struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::dephasing;
  double omega = 1.0;
  std::vector<double> rates;  // gamma | kappa | gamma | (gx, gy, gz)
};

inline HermitianOperator benchmark_hamiltonian(double omega) {
  return HermitianOperator(0.5 * omega * pauli_z());
}

inline GkslGenerator benchmark_channel(const BenchmarkSpec& spec) {
  const std::size_t expected = spec.kind == BenchmarkKind::pauli ? 3 : 1;
  if (spec.rates.size() != expected)
    throw ValidationError("rates", "expected " + std::to_string(expected) + " rate(s) for " +
                                       to_string(spec.kind));
  for (double r : spec.rates)
    if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("rates", "rates must be >= 0");
  const HermitianOperator h = benchmark_hamiltonian(spec.omega);
  std::vector<CMatrix> ops;
  switch (spec.kind) {
    case BenchmarkKind::dephasing:
      ops.push_back(std::sqrt(spec.rates[0] / 2.0) * pauli_z());
      break;
    case BenchmarkKind::amplitude_damping:
      ops.push_back(std::sqrt(spec.rates[0]) * sigma_minus());
      break;
    case BenchmarkKind::depolarizing:
      for (const CMatrix& s : {pauli_x(), pauli_y(), pauli_z()})
        ops.push_back(std::sqrt(spec.rates[0] / 2.0) * s);
      break;
    case BenchmarkKind::pauli: {
      const CMatrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
      for (int j = 0; j < 3; ++j) ops.push_back(std::sqrt(spec.rates[j] / 2.0) * paulis[j]);
      break;
    }
  }
  return GkslGenerator(h, std::move(ops));
}

inline std::string format_rates(const std::vector<double>& rates) {
  std::string out;
  for (std::size_t k = 0; k < rates.size(); ++k) out += (k ? ";" : "") + format_number(rates[k]);
  return out;
}

/// One row per (spec, t): complexity of the standard dilation built from the
/// bath model, its noise value, the reduced / full / coarse bounds and the
/// ideal unitary value. Trend of the value against the (summed) rate at each
/// t is recorded per kind in the metadata.
inline ReportTable benchmark_bounds_table(const std::vector<BenchmarkSpec>& specs, const BathModel& bath,
                                          const std::vector<double>& t_grid, std::uint64_t seed = 0) {
  ReportTable table("bench",
                    {"kind", "rates", "t", "complexity_value", "noise_value", "bound_reduced",
                     "bound_full", "bound_coarse", "ideal"},
                    seed);
  struct Key {
    std::string kind;
    double rate;
    std::vector<double> values;
  };
  std::vector<Key> trend;
  for (const auto& b : specs) {
    const GkslGenerator g = benchmark_channel(b);
    const StandardDilationSpec env = bath.spec_for(g.lindblad_ops().size());
    const Dilation d = standard_dilation(g, env);
    Key key{to_string(b.kind), 0.0, {}};
    for (double r : b.rates) key.rate += r;
    for (double t : t_grid) {
      const ChannelComplexityReport cx = channel_complexity(d, g.h_S(), t);
      const GrowthBound gb = growth_bound(g, env, t);
      table.add_row({to_string(b.kind), format_rates(b.rates), t, cx.value, *cx.noise_value,
                     gb.bound_reduced, gb.bound_full, coarse_bound(g, env, t),
                     *cx.system_unitary_term});
      key.values.push_back(cx.value);
    }
    trend.push_back(std::move(key));
  }
  for (const auto& kind : table.distinct("kind")) {
    std::vector<const Key*> ks;
    for (const auto& k : trend)
      if (k.kind == kind) ks.push_back(&k);
    std::stable_sort(ks.begin(), ks.end(), [](const Key* a, const Key* b) { return a->rate < b->rate; });
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < ks.size(); ++i)
      for (std::size_t j = 0; j < t_grid.size(); ++j) {
        if (ks[i]->values[j] < ks[i - 1]->values[j] - 1e-12) inc = false;
        if (ks[i]->values[j] > ks[i - 1]->values[j] + 1e-12) dec = false;
      }
    table.metadata()["trend_vs_rate." + kind] =
        ks.size() < 2 ? "single_rate" : inc ? "nondecreasing" : dec ? "nonincreasing" : "mixed";
  }
  table.metadata()["bath.d_E"] = std::to_string(bath.d_E);
  table.metadata()["bath.beta"] = format_number(bath.beta);
  table.metadata()["bath.rho_E"] = bath.rho_E ? "declared" : "ground state of h_E";
  return table;
}

}  // namespace gqc
