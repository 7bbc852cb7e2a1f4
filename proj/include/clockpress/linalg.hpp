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

#include <complex>

#include <Eigen/Dense>

#include "clockpress/spin.hpp"

namespace clockpress {

using Complex = std::complex<double>;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Inclusive range of row indices [first, last]; empty when first > last.
struct IndexRange {
  int first = 0;
  int last = -1;

  constexpr int size() const { return last >= first ? last - first + 1 : 0; }
  constexpr bool empty() const { return last < first; }
  constexpr bool contains(int k) const { return k >= first && k <= last; }
  friend constexpr bool operator==(IndexRange, IndexRange) = default;
};

IndexRange intersect(IndexRange a, IndexRange b);
IndexRange hull(IndexRange a, IndexRange b);

/// Operator on a spin-j space whose entries vanish outside rows/columns
/// [offset, offset + mat.rows()). Large blocks are stored this way so that
/// only their numerical support is materialized.
struct SpinOperator {
  Spin j;
  int offset = 0;
  CMatrix mat;

  SpinOperator() = default;
  SpinOperator(Spin spin, int off, CMatrix m) : j(spin), offset(off), mat(std::move(m)) {}

  /// Wraps a full (2j+1)x(2j+1) matrix.
  static SpinOperator full(Spin spin, CMatrix m);
  static SpinOperator zero(Spin spin, IndexRange support);

  IndexRange support() const {
    return {offset, offset + static_cast<int>(mat.rows()) - 1};
  }
  CMatrix dense() const;
  Complex trace() const { return mat.trace(); }
  /// Entry (r, c) in full-space indices, zero outside the support.
  Complex at(int r, int c) const;
  /// Copy restricted or zero-padded to the given support.
  SpinOperator reshaped(IndexRange target) const;
  /// Drops leading/trailing rows whose diagonal magnitude is below cutoff.
  SpinOperator trimmed(double cutoff) const;
};

/// Trace norm of a Hermitian matrix via its eigenvalues; eigenvalues with
/// magnitude below 1e-13 are treated as zero.
double hermitian_trace_norm(const CMatrix& h);

/// Trace norm of wa*a - wb*b for operators on the same spin. Rows whose
/// diagonal is below 1e-36 on both sides are dropped before diagonalizing;
/// for positive semidefinite inputs this perturbs the result by < 1e-16.
double weighted_difference_trace_norm(const SpinOperator& a, double wa, const SpinOperator& b,
                                      double wb);

bool is_hermitian(const CMatrix& m, double tol);
double min_eigenvalue(const CMatrix& h);

}  // namespace clockpress
