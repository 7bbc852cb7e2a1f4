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

#include "clockpress/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clockpress {

IndexRange intersect(IndexRange a, IndexRange b) {
  return {std::max(a.first, b.first), std::min(a.last, b.last)};
}

IndexRange hull(IndexRange a, IndexRange b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.first, b.first), std::max(a.last, b.last)};
}

SpinOperator SpinOperator::full(Spin spin, CMatrix m) {
  if (m.rows() != spin.dim() || m.cols() != spin.dim()) {
    throw std::invalid_argument("SpinOperator::full: matrix is not (2j+1)x(2j+1)");
  }
  return SpinOperator(spin, 0, std::move(m));
}

SpinOperator SpinOperator::zero(Spin spin, IndexRange support) {
  return SpinOperator(spin, support.first, CMatrix::Zero(support.size(), support.size()));
}

CMatrix SpinOperator::dense() const {
  CMatrix out = CMatrix::Zero(j.dim(), j.dim());
  if (mat.size() > 0) out.block(offset, offset, mat.rows(), mat.cols()) = mat;
  return out;
}

Complex SpinOperator::at(int r, int c) const {
  const IndexRange s = support();
  if (!s.contains(r) || !s.contains(c)) return {0.0, 0.0};
  return mat(r - offset, c - offset);
}

SpinOperator SpinOperator::reshaped(IndexRange target) const {
  SpinOperator out = zero(j, target);
  const IndexRange common = intersect(support(), target);
  if (!common.empty()) {
    out.mat.block(common.first - target.first, common.first - target.first, common.size(),
                  common.size()) =
        mat.block(common.first - offset, common.first - offset, common.size(), common.size());
  }
  return out;
}

SpinOperator SpinOperator::trimmed(double cutoff) const {
  const int d = static_cast<int>(mat.rows());
  int lo = 0;
  int hi = d - 1;
  while (lo <= hi && std::abs(mat(lo, lo)) < cutoff) ++lo;
  while (hi >= lo && std::abs(mat(hi, hi)) < cutoff) --hi;
  if (lo > hi) return zero(j, {offset, offset - 1});
  return reshaped({offset + lo, offset + hi});
}

namespace {

constexpr double kEigenvalueClamp = 1e-13;
constexpr double kDiagonalCutoff = 1e-36;

template <typename Matrix>
double trace_norm_of(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_trace_norm: eigenvalue solver did not converge");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (std::abs(lambda) >= kEigenvalueClamp) sum += std::abs(lambda);
  }
  return sum;
}

}  // namespace

double hermitian_trace_norm(const CMatrix& h) {
  if (h.rows() == 0) return 0.0;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    const RMatrix real = h.real();
    return trace_norm_of(real);
  }
  return trace_norm_of(h);
}

double weighted_difference_trace_norm(const SpinOperator& a, double wa, const SpinOperator& b,
                                      double wb) {
  if (a.j != b.j) throw std::invalid_argument("trace norm: operators act on different spins");
  IndexRange support;
  if (wa != 0.0) support = hull(support, a.support());
  if (wb != 0.0) support = hull(support, b.support());
  if (support.empty()) return 0.0;

  CMatrix diff = CMatrix::Zero(support.size(), support.size());
  if (wa != 0.0) diff += wa * a.reshaped(support).mat;
  if (wb != 0.0) diff -= wb * b.reshaped(support).mat;

  // Keep rows where either side has non-negligible diagonal weight.
  auto significant = [&](int k) {
    return std::abs(wa * a.at(k, k)) >= kDiagonalCutoff ||
           std::abs(wb * b.at(k, k)) >= kDiagonalCutoff;
  };
  int lo = support.first;
  int hi = support.last;
  while (lo <= hi && !significant(lo)) ++lo;
  while (hi >= lo && !significant(hi)) --hi;
  if (lo > hi) return 0.0;
  const CMatrix core = diff.block(lo - support.first, lo - support.first, hi - lo + 1, hi - lo + 1);
  return hermitian_trace_norm(core);
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const CMatrix& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace clockpress
