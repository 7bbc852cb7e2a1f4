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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "clockpress/oracle.hpp"
#include "clockpress/repkit.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clockpress;
using clockpress::testing::max_abs_diff;

namespace {

// Total spin squared on n qubits from single-qubit Pauli matrices.
CMatrix total_spin_squared(int n) {
  const auto s = clockpress::testing::spin_matrices(Spin(1));
  const int dim = 1 << n;
  CMatrix total[3] = {CMatrix::Zero(dim, dim), CMatrix::Zero(dim, dim), CMatrix::Zero(dim, dim)};
  const CMatrix single[3] = {s.jx, s.jy, s.jz};
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < 3; ++a) {
      CMatrix op = CMatrix::Identity(1, 1);
      for (int r = 0; r < n; ++r) op = oracle::kron(op, r == q ? single[a] : CMatrix::Identity(2, 2));
      total[a] += op;
    }
  }
  return total[0] * total[0] + total[1] * total[1] + total[2] * total[2];
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("full_product_state") {
  const CMatrix one = oracle::full_product_state({1, 0.3, 0.9, 0.5});
  CHECK(max_abs_diff(one, oracle::qubit_state(0.3, 0.9, 0.5)) < 1e-15);
  const CMatrix rho = oracle::full_product_state({4, 0.3, 0.9, 0.5});
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
  std::vector<int> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const CMatrix p = oracle::permutation_operator(4, perm).cast<Complex>();
    CHECK(max_abs_diff(CMatrix(p * rho * p.adjoint()), rho) < 1e-12);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK_THROWS_AS(oracle::full_product_state({11, 0.3, 0.9, 0.5}), oracle::SizeRefusal);
}

TEST_CASE("qubit_state") {
  const CMatrix rho = oracle::qubit_state(0.25, 0.8, 0.0);
  // |phi> = (1/2, sqrt(3)/2): p |phi><phi| + (1 - p) |phi_perp><phi_perp|.
  CHECK(rho(0, 0).real() == doctest::Approx(0.8 * 0.25 + 0.2 * 0.75));
  CHECK(rho(0, 1).real() == doctest::Approx(0.6 * std::sqrt(3.0) / 4));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
}

TEST_CASE("coupled_basis: singlet and triplet for two qubits") {
  const oracle::CoupledBasis basis = oracle::coupled_basis(2);
  REQUIRE(basis.irreps.size() == 2);
  CHECK(basis.irreps[0].j == Spin(2));
  CHECK(basis.irreps[1].j == Spin(0));
  // Explicit diagonalization: S^2 eigenvalues 2 (x3) and 0 (x1).
  const CMatrix s2 = total_spin_squared(2);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s2);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.0).scale(1.0));
  for (int i = 1; i < 4; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(2.0));
  const Eigen::VectorXcd singlet_eig = es.eigenvectors().col(0);
  const Eigen::VectorXd singlet = basis.irreps[1].columns.col(0);
  CHECK(std::abs(std::abs(singlet_eig.dot(singlet.cast<Complex>())) - 1.0) < 1e-12);
  // Condon-Shortley sign: (|01> - |10>) / sqrt(2).
  CHECK(singlet(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(singlet(2) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  const RMatrix& triplet = basis.irreps[0].columns;
  CHECK(triplet(0, 0) == doctest::Approx(1.0));
  CHECK(triplet(1, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(triplet(2, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(triplet(3, 2) == doctest::Approx(1.0));
}

TEST_CASE("coupled_basis: orthonormal, complete, and spin eigenvectors") {
  for (int n = 1; n <= 8; ++n) {
    const oracle::CoupledBasis basis = oracle::coupled_basis(n);
    const RMatrix v = basis.matrix();
    const int dim = 1 << n;
    REQUIRE(v.cols() == dim);
    CHECK(max_abs_diff(RMatrix(v.transpose() * v), RMatrix::Identity(dim, dim)) < 1e-12);
    for (const Spin j : spin_grid(n)) CHECK(basis.copies(j) == static_cast<int>(repkit::multiplicity(n, j)));
    if (n <= 6) {
      const CMatrix s2 = total_spin_squared(n);
      for (const auto& copy : basis.irreps) {
        const double jj = copy.j.value() * (copy.j.value() + 1);
        const CMatrix cols = copy.columns.cast<Complex>();
        CHECK(max_abs_diff(CMatrix(s2 * cols), CMatrix(jj * cols)) < 1e-11);
      }
    }
  }
  CHECK(oracle::coupled_basis(4).copies(Spin(2)) == 3);
}

TEST_CASE("coupled_basis: lowering structure within each copy") {
  // J_- maps |J, m> to sqrt(J(J+1) - m(m-1)) |J, m-1> in every copy.
  const int n = 5;
  const auto s = clockpress::testing::spin_matrices(Spin(1));
  const int dim = 1 << n;
  CMatrix jminus = CMatrix::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    CMatrix op = CMatrix::Identity(1, 1);
    for (int r = 0; r < n; ++r) op = oracle::kron(op, r == q ? s.jminus : CMatrix::Identity(2, 2));
    jminus += op;
  }
  for (const auto& copy : oracle::coupled_basis(n).irreps) {
    const double jv = copy.j.value();
    for (int k = 0; k + 1 < copy.j.dim(); ++k) {
      const double m = copy.j.m_at(k);
      const Eigen::VectorXcd lowered = jminus * copy.columns.col(k).cast<Complex>();
      const Eigen::VectorXcd expected =
          std::sqrt(jv * (jv + 1) - m * (m - 1)) * copy.columns.col(k + 1).cast<Complex>();
      CHECK((lowered - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("oracle_blocks") {
  for (int n = 2; n <= 6; ++n) {
    const auto blocks = oracle::oracle_blocks({n, 0.3, 0.8, 0.6});
    double total = 0.0;
    for (const auto& b : blocks) {
      total += b.q;
      CHECK(b.cross_block_leakage < 1e-12);
      const int m = b.multiplicity_marginal.rows();
      const CMatrix expected = CMatrix::Identity(m, m) * (b.q / m);
      CHECK(max_abs_diff(b.multiplicity_marginal, expected) < 1e-10);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto pure = oracle::oracle_blocks({6, 0.3, 1.0, 0.6});
  for (const auto& b : pure) {
    if (b.j == Spin(6)) {
      CHECK(b.q == doctest::Approx(1.0));
      Eigen::SelfAdjointEigenSolver<CMatrix> es(b.block);
      CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(b.q == doctest::Approx(0.0).scale(1.0));
    }
  }
  CHECK_THROWS_AS(oracle::oracle_blocks({9, 0.3, 0.8, 0.0}), oracle::SizeRefusal);
}

TEST_CASE("symmetrizer") {
  for (int m = 1; m <= 10; ++m) {
    const RMatrix s = oracle::symmetrizer(m);
    CHECK(max_abs_diff(RMatrix(s * s), s) < 1e-12);
    CHECK(s.trace() == doctest::Approx(m + 1));
    Eigen::SelfAdjointEigenSolver<RMatrix> es(s);
    int rank = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 0.5;
    CHECK(rank == m + 1);
    if (m <= 6) CHECK(max_abs_diff(s, oracle::permutation_average(m)) < 1e-12);
  }
  // S_2 = 1 - |singlet><singlet|.
  Eigen::VectorXd singlet = Eigen::VectorXd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(oracle::symmetrizer(2), RMatrix(RMatrix::Identity(4, 4) - singlet * singlet.transpose())) < 1e-15);
  CHECK_THROWS_AS(oracle::symmetrizer(13), oracle::SizeRefusal);
  CHECK_THROWS_AS(oracle::permutation_average(7), oracle::SizeRefusal);
}

TEST_CASE("dicke_basis") {
  const RMatrix d = oracle::dicke_basis(3);
  CHECK(d(0, 0) == doctest::Approx(1.0));
  for (int idx : {1, 2, 4}) CHECK(d(idx, 1) == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(d(7, 3) == doctest::Approx(1.0));
  CHECK(max_abs_diff(RMatrix(d.transpose() * d), RMatrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("partial_trace_last") {
  const CMatrix a = oracle::qubit_state(0.2, 0.9, 0.3);
  const CMatrix b = oracle::qubit_state(0.7, 0.6, 1.3);
  const CMatrix c = oracle::qubit_state(0.5, 0.8, 2.0);
  const CMatrix abc = oracle::kron(oracle::kron(a, b), c);
  CHECK(max_abs_diff(oracle::partial_trace_last(abc, 3, 1), oracle::kron(a, b)) < 1e-15);
  CHECK(max_abs_diff(oracle::partial_trace_last(abc, 3, 2), a) < 1e-15);
}

TEST_CASE("oracle_convert: examples and limits") {
  CMatrix up = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 0) = 2.0 / 3.0;
  expected(1, 1) = 1.0 / 3.0;
  CHECK(max_abs_diff(oracle::oracle_convert(Spin(1), Spin(2), up), expected) < 1e-14);
  std::mt19937_64 rng(4);
  const CMatrix rho = clockpress::testing::random_density(4, rng);
  CHECK(max_abs_diff(oracle::oracle_convert(Spin(3), Spin(3), rho), rho) < 1e-14);
  CHECK(oracle::trace_down_leakage(Spin(6), Spin(2), clockpress::testing::random_density(7, rng)) < 1e-12);
  CHECK_THROWS_AS(oracle::oracle_convert(Spin(9), Spin(2), CMatrix::Identity(10, 10)), oracle::SizeRefusal);
}

TEST_CASE("embed_block_state reproduces the product state") {
  for (int n = 2; n <= 6; ++n) {
    const ClockParams params{n, 0.35, 0.75, 1.2};
    const CMatrix embedded = oracle::embed_block_state(build_block_state(params), oracle::coupled_basis(n));
    CHECK(max_abs_diff(embedded, oracle::full_product_state(params)) < 1e-10);
  }
}

TEST_CASE("oracle_pipeline") {
  const auto result = oracle::oracle_pipeline({6, 0.5, 1.0, 0.0}, Mode::unknown, 0.2);
  CHECK(std::abs(result.output.trace() - 1.0) < 1e-12);
  CHECK(result.epsilon >= 0.0);
  CHECK(result.epsilon <= 1.0);
  CHECK(max_abs_diff(result.input, oracle::full_product_state({6, 0.5, 1.0, 0.0})) < 1e-14);
  CHECK_THROWS_AS(oracle::oracle_pipeline({9, 0.5, 1.0, 0.0}, Mode::known, 0.2), oracle::SizeRefusal);
}

}  // TEST_SUITE
