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

// Stinespring dilations (H_E, rho_E, H_tot) and the reduced channels they
// generate: direct evaluation, Kraus extraction, Choi matrices and the
// environment-basis gauge.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "gqc/core.hpp"

namespace gqc {

class Dilation {
 public:
  Dilation(int d_S, int d_E, DensityOperator rho_E, HermitianOperator h_tot)
      : d_S_(d_S), d_E_(d_E), rho_E_(std::move(rho_E)), h_tot_(std::move(h_tot)) {
    if (d_S_ < 1) throw ValidationError("d_S", "must be >= 1");
    if (d_E_ < 1) throw ValidationError("d_E", "must be >= 1");
    if (rho_E_.dim() != d_E_)
      throw ValidationError("rho_E", "dimension " + std::to_string(rho_E_.dim()) +
                                         " does not match d_E = " + std::to_string(d_E_));
    if (h_tot_.dim() != d_S_ * d_E_)
      throw ValidationError("h_tot", "dimension " + std::to_string(h_tot_.dim()) +
                                         " does not match d_S * d_E = " +
                                         std::to_string(d_S_ * d_E_));
  }

  int d_S() const noexcept { return d_S_; }
  int d_E() const noexcept { return d_E_; }
  int d_tot() const noexcept { return d_S_ * d_E_; }
  const DensityOperator& rho_E() const noexcept { return rho_E_; }
  const HermitianOperator& h_tot() const noexcept { return h_tot_; }

 private:
  int d_S_;
  int d_E_;
  DensityOperator rho_E_;
  HermitianOperator h_tot_;
};

/// No environment: d_E = 1, rho_E = (1), h_tot = h_S.
inline Dilation trivial_dilation(const HermitianOperator& h_S) {
  return Dilation(h_S.dim(), 1, DensityOperator(), h_S);
}

/// Tr_E[U (x (x) rho_E) U^dag] for an arbitrary system operator x.
inline CMatrix reduce_through(const CMatrix& u, const CMatrix& rho_E, const CMatrix& x, int d_S,
                              int d_E) {
  const CMatrix joint = u * tensor(x, rho_E) * u.adjoint();
  return partial_trace_env(joint, d_S, d_E);
}

/// Linear action of the dilation channel at time t on any d_S x d_S matrix.
inline CMatrix channel_apply_matrix(const Dilation& d, double t, const CMatrix& x) {
  if (x.rows() != d.d_S() || x.cols() != d.d_S())
    throw DimensionError("channel_apply: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected d_S = " + std::to_string(d.d_S()));
  const UnitaryOperator u = unitary_evolve(d.h_tot(), t);
  return reduce_through(u.matrix(), d.rho_E().matrix(), x, d.d_S(), d.d_E());
}

inline DensityOperator channel_apply(const Dilation& d, double t, const DensityOperator& rho_S,
                                     const ToleranceConfig& tol = {}) {
  return DensityOperator(channel_apply_matrix(d, t, rho_S.matrix()), tol, "channel output");
}

// ---------------------------------------------------------------------------
// Kraus

class KrausSet {
 public:
  KrausSet(int d_S, std::vector<CMatrix> ops, const ToleranceConfig& tol = {})
      : d_S_(d_S), ops_(std::move(ops)) {
    if (ops_.empty()) throw ValidationError("kraus", "empty operator list");
    CMatrix acc = CMatrix::Zero(d_S_, d_S_);
    for (std::size_t a = 0; a < ops_.size(); ++a) {
      if (ops_[a].rows() != d_S_ || ops_[a].cols() != d_S_)
        throw ValidationError("kraus[" + std::to_string(a) + "]", "wrong dimension");
      acc += ops_[a].adjoint() * ops_[a];
    }
    const double defect = (acc - CMatrix::Identity(d_S_, d_S_)).norm();
    if (defect > tol.kraus_completeness)
      throw ValidationError("kraus: completeness",
                            "sum K^dag K deviates from identity by " + std::to_string(defect));
  }

  int d_S() const noexcept { return d_S_; }
  const std::vector<CMatrix>& operators() const noexcept { return ops_; }

  CMatrix apply(const CMatrix& x) const {
    CMatrix out = CMatrix::Zero(d_S_, d_S_);
    for (const auto& k : ops_) out += k * x * k.adjoint();
    return out;
  }

 private:
  int d_S_;
  std::vector<CMatrix> ops_;
};

/// K_(a,k) = sqrt(p_a) (<k|_E) U_t (|a>_E) over the spectral decomposition of
/// rho_E; eigenvalues below 1e-12 are dropped.
inline KrausSet kraus_from_dilation(const Dilation& d, double t, const ToleranceConfig& tol = {}) {
  const int d_S = d.d_S(), d_E = d.d_E();
  const CMatrix u = unitary_evolve(d.h_tot(), t).matrix();
  const SpectralDecomposition env =
      eig_hermitian(HermitianOperator::symmetrized(d.rho_E().matrix()));
  std::vector<CMatrix> ops;
  for (Eigen::Index a = env.eigenvalues.size() - 1; a >= 0; --a) {
    const double p = env.eigenvalues(a);
    if (p < 1e-12) continue;
    const CVector alpha = env.eigenvectors.col(a);
    for (int k = 0; k < d_E; ++k) {
      CMatrix kop = CMatrix::Zero(d_S, d_S);
      for (int i = 0; i < d_S; ++i)
        for (int j = 0; j < d_S; ++j) {
          cplx acc = 0.0;
          for (int l = 0; l < d_E; ++l) acc += u(i * d_E + k, j * d_E + l) * alpha(l);
          kop(i, j) = std::sqrt(p) * acc;
        }
      ops.push_back(std::move(kop));
    }
  }
  return KrausSet(d_S, std::move(ops), tol);
}

// ---------------------------------------------------------------------------
// Choi

/// C = sum_ij |i><j| (x) Lambda(|i><j|), validated as a CPTP fingerprint.
class ChoiMatrix {
 public:
  ChoiMatrix(int d_S, CMatrix c, const ToleranceConfig& tol = {}) : d_S_(d_S), c_(std::move(c)) {
    if (c_.rows() != d_S_ * d_S_ || c_.cols() != c_.rows())
      throw ValidationError("choi", "expected dimension d_S^2");
    check_finite(c_, "choi");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (c_ + c_.adjoint()), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -tol.psd * scale)
      throw ValidationError("choi: positivity", "negative eigenvalue " +
                                                    std::to_string(es.eigenvalues().minCoeff()));
    // Tr over the output factor must give the identity on the input factor.
    const double tp = (partial_trace_env(c_, d_S_, d_S_) - CMatrix::Identity(d_S_, d_S_)).norm();
    if (tp > 1e-9)
      throw ValidationError("choi: trace preservation", "defect " + std::to_string(tp));
  }

  int d_S() const noexcept { return d_S_; }
  const CMatrix& matrix() const noexcept { return c_; }

 private:
  int d_S_;
  CMatrix c_;
};

inline ChoiMatrix choi_from_map(int d_S, const std::function<CMatrix(const CMatrix&)>& map) {
  CMatrix c = CMatrix::Zero(d_S * d_S, d_S * d_S);
  for (int i = 0; i < d_S; ++i)
    for (int j = 0; j < d_S; ++j) {
      CMatrix unit = CMatrix::Zero(d_S, d_S);
      unit(i, j) = 1.0;
      c.block(i * d_S, j * d_S, d_S, d_S) = map(unit);
    }
  return ChoiMatrix(d_S, std::move(c));
}

inline ChoiMatrix choi_matrix(const Dilation& d, double t) {
  const CMatrix u = unitary_evolve(d.h_tot(), t).matrix();
  const CMatrix& rho_E = d.rho_E().matrix();
  return choi_from_map(d.d_S(), [&](const CMatrix& x) {
    return reduce_through(u, rho_E, x, d.d_S(), d.d_E());
  });
}

inline ChoiMatrix choi_from_kraus(const KrausSet& k) {
  return choi_from_map(k.d_S(), [&](const CMatrix& x) { return k.apply(x); });
}

inline ChoiMatrix choi_from_unitary(const CMatrix& u) {
  const int d = static_cast<int>(u.rows());
  return choi_from_map(d, [&](const CMatrix& x) { return CMatrix(u * x * u.adjoint()); });
}

/// ||C_a - C_b||_hs; zero iff the channels coincide.
inline double channel_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.d_S() != b.d_S()) throw DimensionError("channel_distance: d_S mismatch");
  return (a.matrix() - b.matrix()).norm();
}

// ---------------------------------------------------------------------------
// gauge

/// (rho_E, H_tot) -> (V rho_E V^dag, (I (x) V) H_tot (I (x) V^dag)).
inline Dilation gauge_transform(const Dilation& d, const UnitaryOperator& v_E) {
  if (v_E.dim() != d.d_E())
    throw DimensionError("gauge_transform: V_E dimension " + std::to_string(v_E.dim()) +
                         " does not match d_E = " + std::to_string(d.d_E()));
  const CMatrix& v = v_E.matrix();
  const CMatrix w = embed_env(v, d.d_S());
  CMatrix rho = v * d.rho_E().matrix() * v.adjoint();
  return Dilation(d.d_S(), d.d_E(), DensityOperator(rho, {}, "rho_E"),
                  HermitianOperator::symmetrized(w * d.h_tot().matrix() * w.adjoint()));
}

}  // namespace gqc
