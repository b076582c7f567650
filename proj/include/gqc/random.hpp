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

// Seeded random operators for property checks and optimizer starts.

#include <cstdint>
#include <random>

#include "gqc/core.hpp"

namespace gqc {

using Rng = std::mt19937_64;

inline CMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(n(rng), n(rng));
  return g;
}

/// (G + G^dag)/2 with Gaussian G, rescaled by `scale`.
inline HermitianOperator random_hermitian(int d, Rng& rng, double scale = 1.0) {
  const CMatrix g = random_ginibre(d, d, rng);
  return HermitianOperator::symmetrized(scale * 0.5 * (g + g.adjoint()));
}

inline HermitianOperator random_traceless_hermitian(int d, Rng& rng, double scale = 1.0) {
  CMatrix h = random_hermitian(d, rng, scale).matrix();
  h -= (h.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
  return HermitianOperator::symmetrized(h);
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
inline UnitaryOperator random_unitary(int d, Rng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return UnitaryOperator(q);
}

/// Hilbert-Schmidt-distributed mixed state G G^dag / Tr(G G^dag).
inline DensityOperator random_density(int d, Rng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(rho);
}

inline DensityOperator random_pure_state(int d, Rng& rng) {
  return DensityOperator::pure(random_ginibre(d, 1, rng).col(0));
}

/// Random PSD matrix with unit-scale spectrum.
inline HermitianOperator random_psd(int d, Rng& rng) {
  const CMatrix g = random_ginibre(d, d, rng);
  return HermitianOperator::symmetrized(g * g.adjoint() / static_cast<double>(d));
}

}  // namespace gqc
