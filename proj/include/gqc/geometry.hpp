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

// Right-invariant geometry on SU(N): penalty metrics over a traceless
// Hermitian basis, path lengths of Hamiltonian controls, the closed-form
// Hilbert-Schmidt complexity of time-independent generators, and the
// Euler-Arnold geodesic flow of the body velocity.
//
// Conventions. A tangent direction -i H is identified with its Hermitian
// generator H. Coefficients are c_i = Tr(B_i H) for an orthonormal basis
// {B_i} of traceless Hermitian matrices. The Omega inner product carries the
// 1/(N^2-1) prefactor, so that with unit weights
//     omega_norm(H) = ||H||_hs / sqrt(N^2 - 1),
// which is the integrand of the closed form t ||H||_hs / sqrt(N^2 - 1).

#include <cmath>
#include <string>
#include <vector>

#include "gqc/core.hpp"

namespace gqc {

struct LabeledOperator {
  std::string label;
  CMatrix op;
};

/// Normalized Pauli strings on n qubits excluding the identity, in
/// lexicographic order over "IXYZ" with qubit 0 leftmost (slowest index).
inline std::vector<LabeledOperator> pauli_string_basis(int n_qubits) {
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  const CMatrix single[4] = {CMatrix::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
  const int count = 1 << (2 * n_qubits);
  const double norm = std::sqrt(static_cast<double>(1 << n_qubits));
  std::vector<LabeledOperator> out;
  out.reserve(count - 1);
  for (int code = 1; code < count; ++code) {
    std::string label;
    CMatrix m = CMatrix::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; --q) {
      const int letter = (code >> (2 * q)) & 3;
      label.push_back(letters[letter]);
      m = tensor(m, single[letter]);
    }
    out.push_back({std::move(label), m / norm});
  }
  return out;
}

/// Number of non-identity factors in a Pauli label.
inline int pauli_weight(const std::string& label) {
  int w = 0;
  for (char c : label) w += (c != 'I');
  return w;
}

/// Generalized Gell-Mann basis of su(N), hs-orthonormal.
inline std::vector<LabeledOperator> gell_mann_basis(int n) {
  std::vector<LabeledOperator> out;
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      CMatrix s = CMatrix::Zero(n, n), a = CMatrix::Zero(n, n);
      s(j, k) = s(k, j) = 1.0 / r2;
      a(j, k) = -kI / r2;
      a(k, j) = kI / r2;
      out.push_back({"S" + std::to_string(j) + "_" + std::to_string(k), s});
      out.push_back({"A" + std::to_string(j) + "_" + std::to_string(k), a});
    }
  for (int l = 1; l < n; ++l) {
    CMatrix d = CMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) d(m, m) = c;
    d(l, l) = -static_cast<double>(l) * c;
    out.push_back({"D" + std::to_string(l), d});
  }
  return out;
}

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Pauli strings when N = 2^n, Gell-Mann otherwise.
inline std::vector<LabeledOperator> default_su_basis(int n) {
  if (is_power_of_two(n) && n >= 2) {
    int q = 0;
    while ((1 << q) < n) ++q;
    return pauli_string_basis(q);
  }
  return gell_mann_basis(n);
}

inline double traceless_defect(const CMatrix& h) {
  return std::abs(h.trace()) / std::sqrt(static_cast<double>(h.rows()));
}

/// Diagonal penalty metric Omega = diag(l_1..l_{N^2-1}) over an
/// hs-orthonormal traceless Hermitian basis.
class PenaltyMetric {
 public:
  PenaltyMetric(int dim_group, std::vector<LabeledOperator> basis, std::vector<double> weights)
      : dim_(dim_group), basis_(std::move(basis)), weights_(std::move(weights)) {
    const std::size_t expected = static_cast<std::size_t>(dim_) * dim_ - 1;
    if (dim_ < 2) throw ValidationError("metric.dim_group", "must be >= 2");
    if (basis_.size() != expected)
      throw ValidationError("metric.basis", "expected " + std::to_string(expected) +
                                                " elements, got " + std::to_string(basis_.size()));
    if (weights_.size() != expected)
      throw ValidationError("metric.weights", "length must equal basis size");
    for (std::size_t i = 0; i < expected; ++i) {
      const CMatrix& b = basis_[i].op;
      if (b.rows() != dim_ || b.cols() != dim_)
        throw ValidationError("metric.basis[" + std::to_string(i) + "]", "wrong dimension");
      if ((b - b.adjoint()).norm() > 1e-12 || std::abs(b.trace()) > 1e-12)
        throw ValidationError("metric.basis[" + std::to_string(i) + "]",
                              "not traceless Hermitian");
      if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
        throw ValidationError("metric.weights[" + std::to_string(i) + "]", "must be positive");
    }
    for (std::size_t i = 0; i < expected; ++i)
      for (std::size_t j = i; j < expected; ++j) {
        const cplx g = hs_inner(basis_[i].op, basis_[j].op);
        if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10)
          throw ValidationError("metric.basis", "not hs-orthonormal at (" + std::to_string(i) +
                                                    "," + std::to_string(j) + ")");
      }
  }

  /// Bi-invariant metric (all weights one).
  static PenaltyMetric uniform(int n) {
    auto basis = default_su_basis(n);
    std::vector<double> w(basis.size(), 1.0);
    return PenaltyMetric(n, std::move(basis), std::move(w));
  }

  int dim_group() const noexcept { return dim_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<LabeledOperator>& basis() const noexcept { return basis_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Real coefficients Tr(B_i h).
  RVector coefficients(const CMatrix& h) const {
    RVector c(static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      c(static_cast<Eigen::Index>(i)) = hs_inner(basis_[i].op, h).real();
    return c;
  }

  CMatrix synthesize(const RVector& c) const {
    CMatrix h = CMatrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) h += c(static_cast<Eigen::Index>(i)) * basis_[i].op;
    return h;
  }

  /// l_i / (N^2 - 1): the diagonal of the inertia operator against Tr(X^dag Y).
  double inertia(std::size_t i) const { return weights_[i] / static_cast<double>(basis_.size()); }

 private:
  int dim_;
  std::vector<LabeledOperator> basis_;
  std::vector<double> weights_;
};

/// Weight 1 on Pauli strings of weight <= 2, q on the rest.
inline PenaltyMetric locality_penalty_metric(int n_qubits, double q, int max_qubits = 6) {
  if (n_qubits < 2) throw ValidationError("n_qubits", "must be >= 2");
  if (n_qubits > max_qubits)
    throw ValidationError("n_qubits", "exceeds dimension cap of " + std::to_string(max_qubits) +
                                          " qubits");
  if (!(q > 1.0)) throw ValidationError("q", "must be > 1");
  auto basis = pauli_string_basis(n_qubits);
  std::vector<double> w;
  w.reserve(basis.size());
  for (const auto& b : basis) w.push_back(pauli_weight(b.label) <= 2 ? 1.0 : q);
  return PenaltyMetric(1 << n_qubits, std::move(basis), std::move(w));
}

inline double omega_norm(const PenaltyMetric& metric, const CMatrix& h,
                         const ToleranceConfig& tol = {}) {
  if (h.rows() != metric.dim_group() || h.cols() != metric.dim_group())
    throw DimensionError("omega_norm: generator dimension " + std::to_string(h.rows()) +
                         " does not match metric dimension " +
                         std::to_string(metric.dim_group()));
  if (traceless_defect(h) > tol.traceless * std::max(1.0, h.norm()))
    throw ValidationError("generator", "not traceless");
  const RVector c = metric.coefficients(h);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    acc += metric.weights()[static_cast<std::size_t>(i)] * c(i) * c(i);
  return std::sqrt(acc / static_cast<double>(c.size()));
}

inline double omega_norm(const PenaltyMetric& metric, const HermitianOperator& h,
                         const ToleranceConfig& tol = {}) {
  return omega_norm(metric, h.matrix(), tol);
}

/// Hilbert-Schmidt complexity of exp(-i t h): t ||h||_hs / sqrt(d^2 - 1).
/// The full norm is used; a trace component is not removed.
inline double hs_complexity_static(const HermitianOperator& h, double t, int d) {
  if (d < 2) throw ValidationError("d", "must be >= 2");
  if (!(t >= 0.0)) throw ValidationError("t", "must be >= 0");
  return t * hs_norm(h.matrix()) / std::sqrt(static_cast<double>(d) * d - 1.0);
}

/// ||h - Tr(h) I / d||_hs, reported next to hs_complexity_static.
inline double traceless_part_norm(const HermitianOperator& h) {
  const auto d = h.dim();
  return (h.matrix() - (h.matrix().trace() / static_cast<double>(d)) * CMatrix::Identity(d, d))
      .norm();
}

// ---------------------------------------------------------------------------
// paths

/// Sampled Hamiltonian control H(s) on a strictly increasing grid.
class HamiltonianPath {
 public:
  HamiltonianPath(std::vector<double> times, std::vector<HermitianOperator> generators,
                  bool require_traceless = true, const ToleranceConfig& tol = {})
      : times_(std::move(times)), gens_(std::move(generators)) {
    if (times_.size() != gens_.size())
      throw ValidationError("path", "grid and sample counts differ");
    if (times_.size() < 2) throw ValidationError("path.times", "need at least 2 samples");
    for (std::size_t k = 1; k < times_.size(); ++k)
      if (!(times_[k] > times_[k - 1]))
        throw ValidationError("path.times", "grid must be strictly increasing");
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (gens_[k].dim() != gens_[0].dim())
        throw ValidationError("path.generators[" + std::to_string(k) + "]", "dimension mismatch");
      if (require_traceless &&
          traceless_defect(gens_[k].matrix()) > tol.traceless * std::max(1.0, gens_[k].matrix().norm()))
        throw ValidationError("path.generators[" + std::to_string(k) + "]", "not traceless");
    }
  }

  /// Samples f(s) on a uniform grid of n points over [t0, t1].
  template <class F>
  static HamiltonianPath sample(F&& f, double t0, double t1, int n, bool require_traceless = true) {
    std::vector<double> ts;
    std::vector<HermitianOperator> hs;
    for (int k = 0; k < n; ++k) {
      const double s = t0 + (t1 - t0) * k / (n - 1);
      ts.push_back(s);
      hs.push_back(f(s));
    }
    return HamiltonianPath(std::move(ts), std::move(hs), require_traceless);
  }

  std::size_t size() const noexcept { return times_.size(); }
  int dim() const noexcept { return gens_.front().dim(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<HermitianOperator>& generators() const noexcept { return gens_; }

 private:
  std::vector<double> times_;
  std::vector<HermitianOperator> gens_;
};

/// Trapezoidal quadrature of a sampled scalar function.
inline double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) acc += 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  return acc;
}

/// Length of the control path: trapezoid of omega_norm(H(s)).
inline double path_length(const PenaltyMetric& metric, const HamiltonianPath& path) {
  if (path.dim() != metric.dim_group())
    throw DimensionError("path_length: path dimension does not match metric");
  std::vector<double> f;
  f.reserve(path.size());
  for (const auto& h : path.generators()) f.push_back(omega_norm(metric, h));
  return trapezoid(path.times(), f);
}

// ---------------------------------------------------------------------------
// Euler-Arnold geodesics

struct GeodesicPath {
  std::vector<double> times;
  std::vector<HermitianOperator> body_velocities;  // A(s) = -i * body_velocities[k]
  std::vector<UnitaryOperator> unitaries;
};

namespace detail {

// d c / ds for the body-velocity coefficients. With M = I_Omega A,
// d/ds (I_Omega A) = [I_Omega A, A] becomes dM_h/ds = -i [M_h, A_h] for the
// Hermitian forms, projected back onto the basis.
inline RVector euler_arnold_rhs(const PenaltyMetric& metric, const RVector& c) {
  const auto n = static_cast<Eigen::Index>(metric.size());
  RVector m(n);
  for (Eigen::Index i = 0; i < n; ++i) m(i) = metric.inertia(static_cast<std::size_t>(i)) * c(i);
  const CMatrix a_h = metric.synthesize(c);
  const CMatrix m_h = metric.synthesize(m);
  const CMatrix dm_h = -kI * commutator(m_h, a_h);
  RVector dc(n);
  for (Eigen::Index i = 0; i < n; ++i)
    dc(i) = hs_inner(metric.basis()[static_cast<std::size_t>(i)].op, dm_h).real() /
            metric.inertia(static_cast<std::size_t>(i));
  return dc;
}

inline RVector rk4_step(const PenaltyMetric& metric, const RVector& c, double h) {
  const RVector k1 = euler_arnold_rhs(metric, c);
  const RVector k2 = euler_arnold_rhs(metric, c + 0.5 * h * k1);
  const RVector k3 = euler_arnold_rhs(metric, c + 0.5 * h * k2);
  const RVector k4 = euler_arnold_rhs(metric, c + h * k3);
  return c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Integrates the Euler-Arnold flow of the body velocity with fixed-step RK4
/// and rebuilds gamma(s) by midpoint exponentials
///     gamma(s + ds) = exp(-i ds A_h(s + ds/2)) gamma(s),  gamma(0) = I.
inline GeodesicPath euler_arnold_geodesic(const PenaltyMetric& metric, const HermitianOperator& a0,
                                          double t_final, int steps,
                                          const ToleranceConfig& tol = {}) {
  if (a0.dim() != metric.dim_group())
    throw DimensionError("euler_arnold_geodesic: a0 dimension does not match metric");
  if (traceless_defect(a0.matrix()) > tol.traceless * std::max(1.0, a0.matrix().norm()))
    throw ValidationError("a0", "not traceless");
  if (steps < 16) throw ValidationError("steps", "must be >= 16");
  if (!(t_final > 0.0)) throw ValidationError("t_final", "must be > 0");

  const double ds = t_final / steps;
  GeodesicPath out;
  RVector c = metric.coefficients(a0.matrix());
  CMatrix gamma = CMatrix::Identity(metric.dim_group(), metric.dim_group());
  out.times.push_back(0.0);
  out.body_velocities.push_back(HermitianOperator::symmetrized(metric.synthesize(c)));
  out.unitaries.push_back(UnitaryOperator(gamma));
  for (int k = 0; k < steps; ++k) {
    const RVector mid = detail::rk4_step(metric, c, 0.5 * ds);
    const UnitaryOperator step =
        unitary_evolve(HermitianOperator::symmetrized(metric.synthesize(mid)), ds);
    gamma = step.matrix() * gamma;
    c = detail::rk4_step(metric, c, ds);
    out.times.push_back((k + 1) * ds);
    out.body_velocities.push_back(HermitianOperator::symmetrized(metric.synthesize(c)));
    out.unitaries.push_back(UnitaryOperator(gamma, ToleranceConfig{.unitarity = 1e-8}));
  }
  return out;
}

}  // namespace gqc
