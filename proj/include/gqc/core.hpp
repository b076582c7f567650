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

// Dense complex-matrix foundation: validated operator types, Hermitian
// spectral decomposition, functional calculus, tensor products and partial
// traces. Every operator type is an immutable value; all functions are pure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gqc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Raised when an input violates a type invariant. `field()` names the
// offending field (e.g. "rho_E: trace") so file loaders can report it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// tolerances

struct ToleranceConfig {
  double hermiticity = 1e-12;         // relative, ||M - M^dag|| <= tol ||M||
  double psd = 1e-10;                 // eigenvalue clamp window
  double trace = 1e-10;               // |Tr rho - 1|
  double unitarity = 1e-10;           // ||U^dag U - I|| <= tol sqrt(d)
  double kraus_completeness = 1e-9;
  double channel_equality = 1e-9;     // Choi distance meaning "same channel"
  double traceless = 1e-10;
};

// ---------------------------------------------------------------------------
// Hilbert-Schmidt primitives

/// Tr(a^dag b).
inline cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hs_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

inline double hs_norm(const CMatrix& a) { return a.norm(); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }
inline CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

/// Largest singular value.
inline double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

inline void check_finite(const CMatrix& m, std::string_view field) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        throw ValidationError(std::string(field) + "[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]",
                              "non-finite entry");
}

// ---------------------------------------------------------------------------
// operator value types

class HermitianOperator {
 public:
  HermitianOperator() : m_(CMatrix::Zero(1, 1)) {}

  explicit HermitianOperator(CMatrix m, const ToleranceConfig& tol = {},
                             std::string_view field = "hermitian")
      : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw ValidationError(std::string(field), "matrix must be square and non-empty");
    check_finite(m_, field);
    const double defect = (m_ - m_.adjoint()).norm();
    if (defect > tol.hermiticity * std::max(m_.norm(), 1e-300) && defect > 0.0)
      throw ValidationError(std::string(field), "not Hermitian (defect " +
                                                    std::to_string(defect) + ")");
    // store the exactly Hermitian part
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
  }

  /// Hermitian part of a computed matrix; skips the tolerance check, which is
  /// meaningless for results that are Hermitian up to rounding only.
  static HermitianOperator symmetrized(const CMatrix& m, std::string_view field = "hermitian") {
    if (m.rows() == 0 || m.rows() != m.cols())
      throw ValidationError(std::string(field), "matrix must be square and non-empty");
    check_finite(m, field);
    HermitianOperator h;
    h.m_ = 0.5 * (m + m.adjoint());
    return h;
  }

  static HermitianOperator zero(int d) { return HermitianOperator(CMatrix::Zero(d, d)); }
  static HermitianOperator identity(int d) {
    return HermitianOperator(CMatrix::Identity(d, d));
  }

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }

 private:
  CMatrix m_;
};

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns orthonormal
};

namespace detail {

// Replace the eigenvectors of each (numerically) degenerate cluster with the
// Gram-Schmidt orthonormalization of the computational basis vectors
// projected onto the cluster span, taken in index order. Non-degenerate
// vectors get their largest component made real positive.
inline void canonicalize_eigenvectors(const RVector& lambda, CMatrix& v) {
  const Eigen::Index n = lambda.size();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  const double cluster_tol = 1e-12 * scale;
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && lambda(stop) - lambda(stop - 1) <= cluster_tol) ++stop;
    const Eigen::Index k = stop - start;
    if (k == 1) {
      Eigen::Index imax = 0;
      v.col(start).cwiseAbs().maxCoeff(&imax);
      const cplx c = v(imax, start);
      v.col(start) *= std::conj(c) / std::abs(c);
    } else {
      const CMatrix span = v.middleCols(start, k);
      const CMatrix proj = span * span.adjoint();
      CMatrix basis(n, k);
      Eigen::Index found = 0;
      for (Eigen::Index e = 0; e < n && found < k; ++e) {
        CVector w = proj.col(e);
        for (Eigen::Index j = 0; j < found; ++j) w -= basis.col(j).dot(w) * basis.col(j);
        for (Eigen::Index j = 0; j < found; ++j) w -= basis.col(j).dot(w) * basis.col(j);
        const double nw = w.norm();
        if (nw > 1e-6) basis.col(found++) = w / nw;
      }
      if (found == k) v.middleCols(start, k) = basis;
    }
    start = stop;
  }
}

}  // namespace detail

/// Spectral decomposition with eigenvalues sorted ascending and a
/// deterministic eigenvector convention (see detail::canonicalize_eigenvectors).
inline SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw NumericalError("eig_hermitian: eigensolver failed to converge");
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  detail::canonicalize_eigenvectors(out.eigenvalues, out.eigenvectors);
  return out;
}

inline CMatrix reconstruct(const SpectralDecomposition& s, const RVector& values) {
  return s.eigenvectors * values.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
}

/// f(h) = V diag(f(lambda)) V^dag for a real scalar function f.
template <class F>
HermitianOperator matrix_fn(const HermitianOperator& h, F&& f) {
  const SpectralDecomposition s = eig_hermitian(h);
  RVector fl(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl(i) = f(s.eigenvalues(i));
  return HermitianOperator::symmetrized(reconstruct(s, fl));
}

/// Square root of a nominally PSD operator. Eigenvalues in
/// [-psd_tol * max(1, |lambda|_max), 0) are clamped to zero.
inline HermitianOperator sqrt_psd(const HermitianOperator& h, const ToleranceConfig& tol = {}) {
  const SpectralDecomposition s = eig_hermitian(h);
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  RVector fl(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) {
    const double l = s.eigenvalues(i);
    if (l < -tol.psd * scale)
      throw NumericalError("matrix_fn(sqrt): eigenvalue " + std::to_string(l) +
                           " below clamp tolerance");
    fl(i) = std::sqrt(std::max(l, 0.0));
  }
  return HermitianOperator::symmetrized(reconstruct(s, fl));
}

inline HermitianOperator abs_op(const HermitianOperator& h) {
  return matrix_fn(h, [](double l) { return std::abs(l); });
}

/// exp(t h) for real t (a positive operator, not a unitary).
inline HermitianOperator exp_scaled(const HermitianOperator& h, double t) {
  return matrix_fn(h, [t](double l) { return std::exp(t * l); });
}

class UnitaryOperator {
 public:
  UnitaryOperator() : m_(CMatrix::Identity(1, 1)) {}

  explicit UnitaryOperator(CMatrix m, const ToleranceConfig& tol = {},
                           std::string_view field = "unitary")
      : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw ValidationError(std::string(field), "matrix must be square and non-empty");
    check_finite(m_, field);
    const auto d = m_.rows();
    const double defect = (m_.adjoint() * m_ - CMatrix::Identity(d, d)).norm();
    if (defect > tol.unitarity * std::sqrt(static_cast<double>(d)))
      throw ValidationError(std::string(field),
                            "not unitary (defect " + std::to_string(defect) + ")");
  }

  static UnitaryOperator identity(int d) { return UnitaryOperator(CMatrix::Identity(d, d)); }

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }

 private:
  CMatrix m_;
};

class DensityOperator {
 public:
  DensityOperator() : m_(CMatrix::Ones(1, 1)) {}

  explicit DensityOperator(CMatrix m, const ToleranceConfig& tol = {},
                           std::string_view field = "rho")
      : m_(std::move(m)) {
    const std::string f(field);
    if (m_.rows() == 0 || m_.rows() != m_.cols())
      throw ValidationError(f, "matrix must be square and non-empty");
    check_finite(m_, field);
    const double defect = (m_ - m_.adjoint()).norm();
    if (defect > std::max(tol.hermiticity, 1e-10) * std::max(m_.norm(), 1e-300) && defect > 0.0)
      throw ValidationError(f + ": hermiticity", "not Hermitian");
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace)
      throw ValidationError(f + ": trace", "trace " + std::to_string(tr) + " differs from 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol.psd)
      throw ValidationError(f + ": eigenvalue",
                            "negative eigenvalue " + std::to_string(solver.eigenvalues().minCoeff()));
  }

  static DensityOperator pure(const CVector& psi) {
    const CVector n = psi / psi.norm();
    return DensityOperator(n * n.adjoint());
  }
  static DensityOperator basis_state(int d, int k) {
    CMatrix m = CMatrix::Zero(d, d);
    m(k, k) = 1.0;
    return DensityOperator(std::move(m));
  }
  static DensityOperator maximally_mixed(int d) {
    return DensityOperator(CMatrix::Identity(d, d) / static_cast<double>(d));
  }

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }

 private:
  CMatrix m_;
};

// ---------------------------------------------------------------------------
// tensor structure (system factor first: index = i_S * d_E + i_E)

/// (a (x) b)[(i p + k), (j q + l)] = a[i,j] b[k,l] with b of size p x q.
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index p = b.rows(), q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

inline CMatrix partial_trace_env(const CMatrix& m, int d_S, int d_E) {
  if (d_S <= 0 || d_E <= 0 || m.rows() != static_cast<Eigen::Index>(d_S) * d_E ||
      m.cols() != m.rows())
    throw DimensionError("partial_trace_env: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(d_S * d_E) + " square");
  CMatrix out = CMatrix::Zero(d_S, d_S);
  for (int i = 0; i < d_S; ++i)
    for (int j = 0; j < d_S; ++j) out(i, j) = m.block(i * d_E, j * d_E, d_E, d_E).trace();
  return out;
}

/// h_S (x) I_E
inline CMatrix embed_system(const CMatrix& h_S, int d_E) {
  return tensor(h_S, CMatrix::Identity(d_E, d_E));
}

/// I_S (x) h_E
inline CMatrix embed_env(const CMatrix& h_E, int d_S) {
  return tensor(CMatrix::Identity(d_S, d_S), h_E);
}

// ---------------------------------------------------------------------------
// evolution

/// exp(-i t h) through the spectral decomposition.
inline UnitaryOperator unitary_evolve(const HermitianOperator& h, double t) {
  const SpectralDecomposition s = eig_hermitian(h);
  CVector phases(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(-kI * t * s.eigenvalues(i));
  CMatrix u = s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
  return UnitaryOperator(std::move(u));
}

/// Dense exponential of a general square matrix by scaling and squaring a
/// truncated Taylor series.
inline CMatrix expm(const CMatrix& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix x = a / std::ldexp(1.0, squarings);
  const auto n = a.rows();
  CMatrix term = CMatrix::Identity(n, n);
  CMatrix sum = term;
  for (int k = 1; k <= 20; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
  return sum;
}

// ---------------------------------------------------------------------------
// standard single-qubit operators

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}
inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
/// |0><1|
inline CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}
/// |1><0|
inline CMatrix sigma_plus() { return sigma_minus().adjoint(); }

}  // namespace gqc
