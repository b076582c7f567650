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

// Intrinsic channel complexity: the infimum of the dilation complexity over
// an admissible set of dilations that realize a target channel family,
// approximated by a multi-start penalty method.
//
// Each start runs BFGS on
//
//     f(theta) + mu1 sum_t ||C_theta(t) - C_target(t)||^2
//              + mu2 max(0, ||H_tot||_op - J_max)^2 (+ energy term),
//
// followed by a Levenberg-Marquardt pass that drives the channel residual to
// zero before the candidate is scored. Candidates that still violate a
// constraint are discarded.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gqc/channel_complexity.hpp"
#include "gqc/core.hpp"
#include "gqc/dilation.hpp"
#include "gqc/geometry.hpp"
#include "gqc/random.hpp"

namespace gqc {

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

struct AdmissibleConstraints {
  int d_E_max = 1;
  double J_max = 1.0;
  std::optional<double> E_max;               // only used together with h_E
  std::optional<HermitianOperator> h_E;
  double channel_tol = 1e-6;
  std::vector<double> t_grid;

  void validate() const {
    if (d_E_max < 1) throw ValidationError("constraints.d_E_max", "must be >= 1");
    if (!(J_max > 0.0)) throw ValidationError("constraints.J_max", "must be > 0");
    if (!(channel_tol > 0.0)) throw ValidationError("constraints.channel_tol", "must be > 0");
    if (t_grid.size() < 2) throw ValidationError("constraints.t_grid", "need at least 2 points");
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      if (!(t_grid[k] >= 0.0)) throw ValidationError("constraints.t_grid", "times must be >= 0");
      if (k > 0 && !(t_grid[k] > t_grid[k - 1]))
        throw ValidationError("constraints.t_grid", "must be strictly increasing");
    }
    if (E_max.has_value() != h_E.has_value())
      throw ValidationError("constraints.E_max", "E_max and h_E must be declared together");
    if (h_E && h_E->dim() > d_E_max)
      throw ValidationError("constraints.h_E", "dimension exceeds d_E_max");
  }

  bool energy_declared() const { return E_max.has_value() && h_E.has_value(); }
};

/// Target channel family on a time grid, optionally with a known dilation
/// that generates it.
struct ChannelTarget {
  int d_S = 0;
  std::vector<double> t_grid;
  std::vector<ChoiMatrix> chois;
  std::optional<Dilation> seed;
};

inline ChannelTarget target_from_dilation(const Dilation& d, std::vector<double> t_grid,
                                          bool use_as_seed = true) {
  ChannelTarget t{d.d_S(), std::move(t_grid), {}, std::nullopt};
  for (double s : t.t_grid) t.chois.push_back(choi_matrix(d, s));
  if (use_as_seed) t.seed = d;
  return t;
}

/// rho -> U_S(t) rho U_S(t)^dag with U_S(t) = exp(-i t h_S).
inline ChannelTarget target_from_unitary(const HermitianOperator& h_S, std::vector<double> t_grid) {
  ChannelTarget t{h_S.dim(), std::move(t_grid), {}, std::nullopt};
  for (double s : t.t_grid) t.chois.push_back(choi_from_unitary(unitary_evolve(h_S, s).matrix()));
  return t;
}

namespace detail {

inline void check_grid(const ChannelTarget& target, const AdmissibleConstraints& c) {
  if (target.t_grid.size() != c.t_grid.size() || target.chois.size() != target.t_grid.size())
    throw ValidationError("t_grid", "target grid does not match constraint grid");
  for (std::size_t k = 0; k < c.t_grid.size(); ++k)
    if (std::abs(target.t_grid[k] - c.t_grid[k]) > 1e-12 * std::max(1.0, std::abs(c.t_grid[k])))
      throw ValidationError("t_grid", "target grid does not match constraint grid at index " +
                                          std::to_string(k));
}

/// Lambda(|i><j|) = Tr_E[P_i rho_E P_j^dag] with P_i the i-th column block of U.
inline CMatrix choi_raw(const CMatrix& u, const CMatrix& rho_E, int d_S, int d_E) {
  CMatrix c(d_S * d_S, d_S * d_S);
  std::vector<CMatrix> pr(static_cast<std::size_t>(d_S));
  for (int i = 0; i < d_S; ++i) pr[static_cast<std::size_t>(i)] = u.middleCols(i * d_E, d_E) * rho_E;
  for (int i = 0; i < d_S; ++i)
    for (int j = 0; j < d_S; ++j) {
      const CMatrix m = pr[static_cast<std::size_t>(i)] * u.middleCols(j * d_E, d_E).adjoint();
      c.block(i * d_S, j * d_S, d_S, d_S) = partial_trace_env(m, d_S, d_E);
    }
  return c;
}

inline double op_norm_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace detail

struct AdmissibleReport {
  bool admissible = false;
  bool dimension_ok = false;
  bool norm_ok = false;
  bool energy_ok = true;
  bool channel_ok = false;
  double channel_residual = 0.0;  // max_t ||C(t) - C_target(t)||_hs
  double op_norm = 0.0;
  double norm_residual = 0.0;     // max(0, ||H_tot||_op - J_max)
  std::optional<double> energy;   // Tr(rho_E h_E)
};

inline AdmissibleReport admissible_check(const Dilation& d, const AdmissibleConstraints& c,
                                         const ChannelTarget& target) {
  detail::check_grid(target, c);
  if (d.d_S() != target.d_S) throw DimensionError("admissible_check: d_S does not match target");
  AdmissibleReport r;
  r.dimension_ok = d.d_E() <= c.d_E_max;
  r.op_norm = detail::op_norm_hermitian(d.h_tot().matrix());
  r.norm_residual = std::max(0.0, r.op_norm - c.J_max);
  r.norm_ok = r.op_norm <= c.J_max * (1.0 + 1e-9);
  if (c.energy_declared()) {
    if (c.h_E->dim() != d.d_E()) {
      r.energy_ok = false;
    } else {
      r.energy = (d.rho_E().matrix() * c.h_E->matrix()).trace().real();
      r.energy_ok = *r.energy <= *c.E_max + 1e-12;
    }
  }
  const CMatrix& h = d.h_tot().matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  for (std::size_t k = 0; k < c.t_grid.size(); ++k) {
    const CVector ph = (-kI * es.eigenvalues().cast<cplx>() * c.t_grid[k]).array().exp().matrix();
    const CMatrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix ck = detail::choi_raw(u, d.rho_E().matrix(), d.d_S(), d.d_E());
    r.channel_residual = std::max(r.channel_residual, (ck - target.chois[k].matrix()).norm());
  }
  r.channel_ok = r.channel_residual <= c.channel_tol;
  r.admissible = r.dimension_ok && r.norm_ok && r.energy_ok && r.channel_ok;
  return r;
}

// ---------------------------------------------------------------------------
// parameterization

/// theta = (theta_H, theta_rho): H_tot = sum theta_H[i] B_i over an
/// orthonormal basis of traceless Hermitian operators on the total space,
/// rho_E = G G^dag / Tr(G G^dag) with G read row-major as (re, im) pairs.
class DilationParameterization {
 public:
  DilationParameterization(int d_S, int d_E) : d_S_(d_S), d_E_(d_E) {
    if (d_S < 1 || d_E < 1 || d_S * d_E < 2)
      throw ValidationError("parameterization", "need d_S * d_E >= 2");
    for (auto& b : default_su_basis(d_S * d_E)) basis_.push_back(std::move(b.op));
  }

  int d_S() const noexcept { return d_S_; }
  int d_E() const noexcept { return d_E_; }
  int size_h() const noexcept { return static_cast<int>(basis_.size()); }
  int size_rho() const noexcept { return 2 * d_E_ * d_E_; }
  int size() const noexcept { return size_h() + size_rho(); }

  CMatrix decode_h(const RVector& theta) const {
    const int n = d_S_ * d_E_;
    CMatrix h = CMatrix::Zero(n, n);
    for (int i = 0; i < size_h(); ++i) h += theta(i) * basis_[static_cast<std::size_t>(i)];
    return 0.5 * (h + h.adjoint());
  }

  CMatrix decode_rho(const RVector& theta) const {
    CMatrix g(d_E_, d_E_);
    for (int a = 0; a < d_E_; ++a)
      for (int b = 0; b < d_E_; ++b) {
        const int k = size_h() + 2 * (a * d_E_ + b);
        g(a, b) = cplx(theta(k), theta(k + 1));
      }
    CMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    if (!(tr > 1e-300) || !std::isfinite(tr))
      return CMatrix::Identity(d_E_, d_E_) / static_cast<double>(d_E_);
    rho /= tr;
    return 0.5 * (rho + rho.adjoint());
  }

  Dilation decode(const RVector& theta) const {
    if (theta.size() != size()) throw DimensionError("decode: parameter length mismatch");
    return Dilation(d_S_, d_E_, DensityOperator(decode_rho(theta), {}, "rho_E"),
                    HermitianOperator::symmetrized(decode_h(theta)));
  }

  /// Inverse of decode up to the trace of H_tot (dropped) and the gauge of
  /// G (G = sqrt(rho_E) is chosen).
  RVector encode(const Dilation& d) const {
    if (d.d_S() != d_S_ || d.d_E() != d_E_) throw DimensionError("encode: dimension mismatch");
    RVector theta(size());
    for (int i = 0; i < size_h(); ++i)
      theta(i) = hs_inner(basis_[static_cast<std::size_t>(i)], d.h_tot().matrix()).real();
    const CMatrix g = sqrt_psd(HermitianOperator::symmetrized(d.rho_E().matrix())).matrix();
    for (int a = 0; a < d_E_; ++a)
      for (int b = 0; b < d_E_; ++b) {
        const int k = size_h() + 2 * (a * d_E_ + b);
        theta(k) = g(a, b).real();
        theta(k + 1) = g(a, b).imag();
      }
    return theta;
  }

 private:
  int d_S_;
  int d_E_;
  std::vector<CMatrix> basis_;
};

// ---------------------------------------------------------------------------
// optimizer

struct OptimizerOptions {
  int starts = 8;
  std::uint64_t seed = 0;
  int max_iters = 100;
  double fd_step = 1e-6;
  double mu1 = 1e6;
  double mu2 = 1e4;
  double polish_tol = 1e-10;
  int restore_iters = 30;
  int threads = 0;  // 0: GQC_THREADS or hardware concurrency
};

struct CandidateRecord {
  int index = 0;
  int d_E = 0;
  std::string origin;  // "trivial", "seed", "extra", "random", with ":raw" for unpolished
  double value = 0.0;  // objective value (complexity or noise gap)
  double channel_residual = 0.0;
  double op_norm = 0.0;
  bool feasible = false;
};

struct OptimizationResult {
  double best_value = 0.0;
  Dilation best_dilation;
  double channel_residual = 0.0;
  bool feasible = false;
  int starts_used = 0;
  std::uint64_t seed = 0;
  int best_index = -1;
  std::vector<CandidateRecord> candidates;
};

namespace detail {

enum class Mode { complexity, noise };

struct Problem {
  int d_S = 0;
  int d_E = 0;
  DilationParameterization param;
  std::vector<double> t_grid;
  std::vector<CMatrix> target;
  CMatrix hs_sq;  // (h_S (x) I)^2
  double t_eval = 0.0;
  double pre = 0.0;
  double ideal = 0.0;
  Mode mode = Mode::complexity;
  const AdmissibleConstraints* c = nullptr;
};

struct Eval {
  double f = 0.0;
  double dist_sq = 0.0;
  double residual = 0.0;
  double op_norm = 0.0;
  double energy_excess = 0.0;
};

inline double fast_value(const Problem& p, const CMatrix& h) {
  const double total = p.t_eval * p.pre * h.norm();
  CMatrix x = h * h - p.hs_sq;
  x = 0.5 * (x + x.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
  const double sur = p.t_eval * p.pre * std::sqrt(es.eigenvalues().cwiseAbs().sum());
  return total - sur;
}

inline Eval evaluate(const Problem& p, const RVector& theta) {
  const CMatrix h = p.param.decode_h(theta);
  const CMatrix rho = p.param.decode_rho(theta);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eval e;
  e.op_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  for (std::size_t k = 0; k < p.t_grid.size(); ++k) {
    const CVector ph = (-kI * es.eigenvalues().cast<cplx>() * p.t_grid[k]).array().exp().matrix();
    const CMatrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const double dist = (choi_raw(u, rho, p.d_S, p.d_E) - p.target[k]).norm();
    e.dist_sq += dist * dist;
    e.residual = std::max(e.residual, dist);
  }
  const double v = fast_value(p, h);
  e.f = p.mode == Mode::noise ? std::abs(v - p.ideal) : v;
  if (p.c->energy_declared()) {
    const double en = (rho * p.c->h_E->matrix()).trace().real();
    e.energy_excess = std::max(0.0, en - *p.c->E_max);
  }
  return e;
}

inline double penalized(const Problem& p, const RVector& theta, double mu1, double mu2) {
  const Eval e = evaluate(p, theta);
  const double nx = std::max(0.0, e.op_norm - p.c->J_max);
  return e.f + mu1 * e.dist_sq + mu2 * nx * nx + mu2 * e.energy_excess * e.energy_excess;
}

inline RVector residual_vector(const Problem& p, const RVector& theta) {
  const CMatrix h = p.param.decode_h(theta);
  const CMatrix rho = p.param.decode_rho(theta);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::Index block = 2 * p.target.front().size();
  RVector r(block * static_cast<Eigen::Index>(p.t_grid.size()));
  for (std::size_t k = 0; k < p.t_grid.size(); ++k) {
    const CVector ph = (-kI * es.eigenvalues().cast<cplx>() * p.t_grid[k]).array().exp().matrix();
    const CMatrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix dm = choi_raw(u, rho, p.d_S, p.d_E) - p.target[k];
    const Eigen::Index off = block * static_cast<Eigen::Index>(k);
    for (Eigen::Index q = 0; q < dm.size(); ++q) {
      r(off + 2 * q) = dm.data()[q].real();
      r(off + 2 * q + 1) = dm.data()[q].imag();
    }
  }
  return r;
}

/// BFGS with central-difference gradients and Armijo backtracking.
template <class F>
RVector bfgs(F&& f, RVector x, int max_iters, double fd_step, double tol) {
  const Eigen::Index n = x.size();
  auto grad = [&](const RVector& z) {
    RVector g(n);
    RVector zp = z;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double h = fd_step * std::max(1.0, std::abs(z(i)));
      zp(i) = z(i) + h;
      const double fp = f(zp);
      zp(i) = z(i) - h;
      const double fm = f(zp);
      zp(i) = z(i);
      g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
  };
  double fx = f(x);
  RVector g = grad(x);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  for (int it = 0; it < max_iters; ++it) {
    if (!std::isfinite(fx) || g.lpNorm<Eigen::Infinity>() <= tol) break;
    RVector p = -hinv * g;
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      p = -g;
      slope = g.dot(p);
    }
    // Cap the trial step at unit length in the max norm.
    const double pmax = p.lpNorm<Eigen::Infinity>();
    double step = pmax > 1.0 ? 1.0 / pmax : 1.0;
    RVector xn;
    double fn = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      xn = x + step * p;
      fn = f(xn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const RVector gn = grad(xn);
    const RVector s = xn - x;
    const RVector y = gn - g;
    const double ys = y.dot(s);
    const double df = fx - fn;
    x = xn;
    g = gn;
    fx = fn;
    if (ys > 1e-300) {
      if (!scaled) {
        hinv *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const Eigen::MatrixXd i_n = Eigen::MatrixXd::Identity(n, n);
      hinv = (i_n - rho * s * y.transpose()) * hinv * (i_n - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    if (df <= tol * std::max(1.0, std::abs(fx))) break;
  }
  return x;
}

/// Levenberg-Marquardt on the stacked Choi residual.
inline RVector restore(const Problem& p, RVector x, int iters) {
  RVector r = residual_vector(p, x);
  double rn = r.norm();
  double lambda = 1e-3;
  const Eigen::Index n = x.size();
  for (int it = 0; it < iters && rn > 1e-15; ++it) {
    Eigen::MatrixXd jac(r.size(), n);
    RVector xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(i)));
      xp(i) = x(i) + h;
      const RVector rp = residual_vector(p, xp);
      xp(i) = x(i) - h;
      const RVector rm = residual_vector(p, xp);
      xp(i) = x(i);
      jac.col(i) = (rp - rm) / (2.0 * h);
    }
    const Eigen::MatrixXd a = jac.transpose() * jac;
    const RVector g = jac.transpose() * r;
    RVector diag = a.diagonal().cwiseMax(1e-12);
    bool accepted = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd m = a;
      m.diagonal() += lambda * diag;
      const RVector dx = -m.ldlt().solve(g);
      const RVector xn = x + dx;
      const RVector rnv = residual_vector(p, xn);
      const double nn = rnv.norm();
      if (std::isfinite(nn) && nn < rn) {
        x = xn;
        r = rnv;
        rn = nn;
        lambda = std::max(lambda / 5.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  return x;
}

struct StartJob {
  int index = 0;
  int d_E = 0;
  std::string origin;
  RVector theta0;
};

struct StartOutcome {
  CandidateRecord record;
  std::optional<Dilation> dilation;
};

inline int thread_cap(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GQC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// h_S (x) I_E with rho_E = |0><0|.
inline Dilation trivial_coupling(const HermitianOperator& h_S, int d_E) {
  return Dilation(h_S.dim(), d_E, DensityOperator::basis_state(d_E, 0),
                  HermitianOperator::symmetrized(embed_system(h_S.matrix(), d_E)));
}

inline double candidate_value(Mode mode, const Dilation& d, const HermitianOperator& h_S,
                              double t_eval, double ideal) {
  const double v = channel_complexity(d, h_S, t_eval).value;
  return mode == Mode::noise ? std::abs(v - ideal) : v;
}

inline CandidateRecord score(const Dilation& d, const ChannelTarget& target,
                             const AdmissibleConstraints& c, const HermitianOperator& h_S,
                             double t_eval, Mode mode, double ideal) {
  const AdmissibleReport a = admissible_check(d, c, target);
  CandidateRecord rec;
  rec.d_E = d.d_E();
  rec.value = candidate_value(mode, d, h_S, t_eval, ideal);
  rec.channel_residual = a.channel_residual;
  rec.op_norm = a.op_norm;
  rec.feasible = a.admissible && std::isfinite(rec.value);
  return rec;
}

inline OptimizationResult optimize(const ChannelTarget& target, const AdmissibleConstraints& c,
                                   const HermitianOperator& h_S, double t_eval,
                                   const OptimizerOptions& opts,
                                   const std::vector<Dilation>& extra_starts, Mode mode) {
  c.validate();
  check_grid(target, c);
  if (h_S.dim() != target.d_S) throw DimensionError("intrinsic: h_S does not match target d_S");
  if (target.d_S < 2) throw ValidationError("d_S", "must be >= 2");
  if (!(t_eval >= 0.0) || t_eval > c.t_grid.back() * (1.0 + 1e-12))
    throw ValidationError("t_eval", "must lie in [0, T]");
  if (opts.starts < 1) throw ValidationError("opts.starts", "must be >= 1");
  const double ideal = hs_complexity_static(h_S, t_eval, h_S.dim());

  std::vector<int> dims;
  if (c.energy_declared()) {
    dims.push_back(c.h_E->dim());
  } else {
    for (int de = 1; de <= c.d_E_max; ++de) dims.push_back(de);
  }

  OptimizationResult res{0.0, trivial_dilation(h_S), 0.0, false, 0, opts.seed, -1, {}};
  std::vector<StartOutcome> outcomes;

  // Unpolished candidates: the trivial coupling per dimension and every
  // supplied dilation, evaluated as given.
  std::vector<Dilation> raw;
  std::vector<std::string> raw_origin;
  for (int de : dims) {
    raw.push_back(trivial_coupling(h_S, de));
    raw_origin.push_back("trivial:raw");
  }
  if (target.seed) {
    raw.push_back(*target.seed);
    raw_origin.push_back("seed:raw");
  }
  for (const auto& d : extra_starts) {
    if (d.d_S() != target.d_S) throw DimensionError("intrinsic: extra start has wrong d_S");
    raw.push_back(d);
    raw_origin.push_back("extra:raw");
  }
  for (std::size_t k = 0; k < raw.size(); ++k) {
    StartOutcome o;
    if (raw[k].d_E() <= c.d_E_max) {
      o.record = score(raw[k], target, c, h_S, t_eval, mode, ideal);
      o.dilation = raw[k];
    } else {
      o.record.d_E = raw[k].d_E();
      o.record.value = std::numeric_limits<double>::infinity();
    }
    o.record.origin = raw_origin[k];
    o.record.index = static_cast<int>(k);
    outcomes.push_back(std::move(o));
  }

  // Polished starts.
  std::vector<StartJob> jobs;
  int index = static_cast<int>(outcomes.size());
  const double sigma = 0.3 * std::max(detail::op_norm_hermitian(h_S.matrix()), 0.1);
  for (int de : dims) {
    const DilationParameterization par(target.d_S, de);
    std::vector<std::pair<std::string, RVector>> seeds;
    seeds.emplace_back("trivial", par.encode(trivial_coupling(h_S, de)));
    if (target.seed && target.seed->d_E() == de) seeds.emplace_back("seed", par.encode(*target.seed));
    for (const auto& d : extra_starts)
      if (d.d_E() == de) seeds.emplace_back("extra", par.encode(d));
    const RVector base = seeds.front().second;
    for (int s = 0; s < opts.starts; ++s) {
      StartJob job;
      job.index = index++;
      job.d_E = de;
      if (s < static_cast<int>(seeds.size())) {
        job.origin = seeds[static_cast<std::size_t>(s)].first;
        job.theta0 = seeds[static_cast<std::size_t>(s)].second;
      } else {
        std::seed_seq sq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(job.index),
                         static_cast<std::uint64_t>(de)};
        Rng rng(sq);
        std::normal_distribution<double> n01(0.0, 1.0);
        job.origin = "random";
        job.theta0 = base;
        for (int i = 0; i < par.size_h(); ++i) job.theta0(i) += sigma * n01(rng);
        for (int i = par.size_h(); i < par.size(); ++i) job.theta0(i) += 0.5 * n01(rng);
      }
      jobs.push_back(std::move(job));
    }
  }

  auto run = [&](const StartJob& job) -> StartOutcome {
    StartOutcome o;
    o.record.index = job.index;
    o.record.d_E = job.d_E;
    o.record.origin = job.origin;
    o.record.value = std::numeric_limits<double>::infinity();
    try {
      Problem p{target.d_S, job.d_E, DilationParameterization(target.d_S, job.d_E), c.t_grid, {},
                {}, t_eval, detail::hs_prefactor(target.d_S * job.d_E), ideal, mode, &c};
      for (const auto& ch : target.chois) p.target.push_back(ch.matrix());
      const CMatrix hs = embed_system(h_S.matrix(), job.d_E);
      p.hs_sq = hs * hs;
      double mu1 = opts.mu1, mu2 = opts.mu2;
      auto obj = [&](const RVector& th) { return penalized(p, th, mu1, mu2); };
      RVector th = bfgs(obj, job.theta0, opts.max_iters, opts.fd_step, opts.polish_tol);
      const Eval e = evaluate(p, th);
      if (e.residual > c.channel_tol || e.op_norm > c.J_max || e.energy_excess > 0.0) {
        mu1 *= 2.0;
        mu2 *= 2.0;
        th = bfgs(obj, th, opts.max_iters, opts.fd_step, opts.polish_tol);
      }
      th = restore(p, th, opts.restore_iters);
      Dilation d = p.param.decode(th);
      CandidateRecord rec = score(d, target, c, h_S, t_eval, mode, ideal);
      rec.index = job.index;
      rec.origin = job.origin;
      o.record = rec;
      o.dilation = std::move(d);
    } catch (const Error&) {
      o.record.feasible = false;
    }
    return o;
  };

  const std::size_t cap = static_cast<std::size_t>(thread_cap(opts.threads));
  std::vector<StartOutcome> polished(jobs.size());
  for (std::size_t b = 0; b < jobs.size(); b += cap) {
    const std::size_t e = std::min(jobs.size(), b + cap);
    if (cap == 1) {
      polished[b] = run(jobs[b]);
      continue;
    }
    std::vector<std::future<StartOutcome>> fut;
    for (std::size_t k = b; k < e; ++k) fut.push_back(std::async(std::launch::async, run, std::cref(jobs[k])));
    for (std::size_t k = b; k < e; ++k) polished[k] = fut[k - b].get();
  }
  for (auto& o : polished) outcomes.push_back(std::move(o));

  res.starts_used = static_cast<int>(jobs.size());
  const StartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    res.candidates.push_back(o.record);
    if (!o.record.feasible) continue;
    if (!best || o.record.value < best->record.value ||
        (o.record.value == best->record.value && o.record.index < best->record.index))
      best = &o;
  }
  if (!best) {
    double min_res = std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) min_res = std::min(min_res, o.record.channel_residual);
    throw InfeasibleError("intrinsic: no feasible candidate among " +
                          std::to_string(outcomes.size()) + " (smallest channel residual " +
                          std::to_string(min_res) + ", tol " + std::to_string(c.channel_tol) + ")");
  }
  res.best_value = best->record.value;
  res.best_dilation = *best->dilation;
  res.channel_residual = best->record.channel_residual;
  res.feasible = true;
  res.best_index = best->record.index;
  return res;
}

}  // namespace detail

/// Best feasible complexity over the admissible set. `extra_starts` (e.g. the
/// best dilation of a smaller constraint set) are scored as given and also
/// used as polishing starts.
inline OptimizationResult intrinsic_complexity(const ChannelTarget& target,
                                               const AdmissibleConstraints& c,
                                               const HermitianOperator& h_S, double t_eval,
                                               const OptimizerOptions& opts = {},
                                               const std::vector<Dilation>& extra_starts = {}) {
  return detail::optimize(target, c, h_S, t_eval, opts, extra_starts, detail::Mode::complexity);
}

struct IntrinsicNoiseResult {
  double value = 0.0;  // min |G(Lambda; D) - G_hs(U_S)| over the admissible set
  // |G_intr - G_hs(U_S)|, meaningful when one dilation minimizes both.
  double simplified = 0.0;
  double ideal = 0.0;
  OptimizationResult direct;
  OptimizationResult complexity;
};

inline IntrinsicNoiseResult intrinsic_noise(const ChannelTarget& target, const AdmissibleConstraints& c,
                                            const HermitianOperator& h_S, double t_eval,
                                            const OptimizerOptions& opts = {},
                                            const std::vector<Dilation>& extra_starts = {}) {
  OptimizationResult direct =
      detail::optimize(target, c, h_S, t_eval, opts, extra_starts, detail::Mode::noise);
  OptimizationResult cx =
      detail::optimize(target, c, h_S, t_eval, opts, extra_starts, detail::Mode::complexity);
  const double ideal = hs_complexity_static(h_S, t_eval, h_S.dim());
  return IntrinsicNoiseResult{direct.best_value, std::abs(cx.best_value - ideal), ideal,
                              std::move(direct), std::move(cx)};
}

}  // namespace gqc
