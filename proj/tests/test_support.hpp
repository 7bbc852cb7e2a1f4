// Copyright 2026 The clockpress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "clockpress/linalg.hpp"
#include "clockpress/spin.hpp"

namespace clockpress::testing {

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const RMatrix& a, const RMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Unit-trace positive semidefinite matrix G G^dag / Tr with Gaussian G.
inline CMatrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

/// Random Hermitian matrix with Gaussian entries.
inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  return (g + g.adjoint()) / 2.0;
}

/// Spin matrices in the |j, m> basis ordered m = j..-j.
struct SpinMatrices {
  CMatrix jz, jplus, jminus, jy, jx;
};

inline SpinMatrices spin_matrices(Spin j) {
  const int d = j.dim();
  SpinMatrices s;
  s.jz = CMatrix::Zero(d, d);
  s.jplus = CMatrix::Zero(d, d);
  const double jv = j.value();
  for (int k = 0; k < d; ++k) {
    const double m = jv - k;
    s.jz(k, k) = m;
    if (k > 0) s.jplus(k - 1, k) = std::sqrt(jv * (jv + 1) - m * (m + 1));
  }
  s.jminus = s.jplus.adjoint();
  s.jx = (s.jplus + s.jminus) / 2.0;
  s.jy = (s.jplus - s.jminus) / Complex(0.0, 2.0);
  return s;
}

/// exp(-i theta H) for Hermitian H via its eigendecomposition.
inline CMatrix exp_minus_i(const CMatrix& h, double theta) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<Complex>() * Complex(0.0, -theta)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Wigner d from the J_y eigendecomposition; an independent route to the
/// factorial sum and the ladder.
inline RMatrix wigner_d_by_eigen(Spin j, double theta) {
  return exp_minus_i(spin_matrices(j).jy, theta).real();
}

/// Choi matrix sum_{ab} |a><b| (x) channel(|a><b|) of a linear map on d_in x d_in matrices.
template <typename Channel>
CMatrix choi_matrix(int d_in, int d_out, Channel&& channel) {
  CMatrix choi = CMatrix::Zero(d_in * d_out, d_in * d_out);
  for (int a = 0; a < d_in; ++a) {
    for (int b = 0; b < d_in; ++b) {
      CMatrix unit = CMatrix::Zero(d_in, d_in);
      unit(a, b) = 1.0;
      choi.block(a * d_out, b * d_out, d_out, d_out) = channel(unit);
    }
  }
  return choi;
}

}  // namespace clockpress::testing
