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

#include <cmath>
#include <random>

#include "clockpress/clockstate.hpp"
#include "clockpress/oracle.hpp"
#include "clockpress/repkit.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace clockpress;
using clockpress::testing::max_abs_diff;

namespace {

double weight_of(const std::vector<SpinWeight>& weights, Spin j) {
  for (const auto& w : weights)
    if (w.j == j) return w.q;
  return 0.0;
}

BlockState random_block_state(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  BlockState state;
  state.n = n;
  double total = 0.0;
  for (const Spin j : spin_grid(n)) {
    const double w = uniform(rng);
    total += w;
    state.blocks.push_back({j, w, SpinOperator::full(j, clockpress::testing::random_density(j.dim(), rng))});
  }
  for (Block& b : state.blocks) b.weight /= total;
  return state;
}

}  // namespace

TEST_SUITE("clockstate") {

TEST_CASE("ClockParams validation") {
  CHECK_NOTHROW(ClockParams{4, 0.5, 0.8, 0.0}.validate());
  CHECK_THROWS_AS((ClockParams{0, 0.5, 0.8, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ClockParams{4, 0.0, 0.8, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ClockParams{4, 0.5, 0.5, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ClockParams{4, 0.5, 1.01, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ClockParams{4, 0.5, 0.8, 7.0}.validate()), std::invalid_argument);
}

TEST_CASE("qj_weights: p = 1 puts all weight on n/2") {
  for (int n : {1, 2, 7, 64, 1000}) {
    const auto q = qj_weights(n, 1.0);
    CHECK(q.front().j == Spin(n));
    CHECK(q.front().q == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i].q == 0.0);
  }
}

TEST_CASE("qj_weights: two copies against the triplet projector") {
  // Tr[P_triplet rho (x) rho] with P_triplet = 1 - |singlet><singlet|.
  const double p = 0.8;
  const CMatrix rho = oracle::qubit_state(0.3, p, 0.4);
  const CMatrix two = oracle::kron(rho, rho);
  Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const double q0 = (singlet.adjoint() * two * singlet)(0, 0).real();
  const auto q = qj_weights(2, p);
  CHECK(weight_of(q, Spin(0)) == doctest::Approx(q0).epsilon(1e-14));
  CHECK(weight_of(q, Spin(2)) == doctest::Approx(1.0 - q0).epsilon(1e-14));
  CHECK(weight_of(q, Spin(2)) == doctest::Approx(0.84).epsilon(1e-14));
  CHECK(weight_of(q, Spin(0)) == doctest::Approx(0.16).epsilon(1e-14));
}

TEST_CASE("qj_weights: normalization and support") {
  for (int n : {1, 2, 3, 10, 101, 1024, 5000})
    for (double p : {0.51, 0.6, 0.8, 0.95, 1.0}) {
      const auto q = qj_weights(n, p);
      CHECK(q.size() == spin_grid(n).size());
      double sum = 0.0;
      for (const auto& w : q) {
        CHECK(w.q >= 0.0);
        sum += w.q;
      }
      // Log-space terms reach magnitude ~n, so relative accuracy degrades
      // like n times the unit roundoff.
      CHECK(std::abs(sum - 1.0) < (n <= 1024 ? 1e-12 : 1e-11));
    }
}

TEST_CASE("qj_weights: matches the explicit product state up to n = 8") {
  for (int n = 2; n <= 8; ++n) {
    const auto blocks = oracle::oracle_blocks({n, 0.3, 0.7, 0.0});
    const auto q = qj_weights(n, 0.7);
    for (const auto& ob : blocks) CHECK(weight_of(q, ob.j) == doctest::Approx(ob.q).epsilon(1e-12));
  }
}

TEST_CASE("qj_weights_closed_form is only a diagnostic") {
  // At n = 2 the closed form is negative for J = 1, and it misses p = 1.
  const auto closed = qj_weights_closed_form(2, 0.8);
  CHECK(weight_of(closed, Spin(2)) < 0.0);
  const auto at_one = qj_weights_closed_form(8, 1.0);
  CHECK(weight_of(at_one, Spin(8)) == doctest::Approx(0.0));
  // In the bulk of large n it is close to the exact weights.
  const int n = 2000;
  const auto exact = qj_weights(n, 0.8);
  const auto approx = qj_weights_closed_form(n, 0.8);
  double l1 = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) l1 += std::abs(exact[i].q - approx[i].q);
  CHECK(l1 < 0.05);
}

TEST_CASE("block_spectrum") {
  const auto w = block_spectrum(0.8, Spin(2));
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(0.64 / 0.84));
  CHECK(w[1] == doctest::Approx(0.16 / 0.84));
  CHECK(w[2] == doctest::Approx(0.04 / 0.84));
  const auto pure = block_spectrum(1.0, Spin(5));
  CHECK(pure[0] == 1.0);
  for (std::size_t i = 1; i < pure.size(); ++i) CHECK(pure[i] == 0.0);
}

TEST_CASE("rho_pJ: spin 1/2 is the single-qubit state at t = 0") {
  for (double s : {0.2, 0.5, 0.9})
    for (double p : {0.6, 1.0})
      CHECK(max_abs_diff(rho_pJ(p, Spin(1), s), oracle::qubit_state(s, p, 0.0)) < 1e-14);
}

TEST_CASE("rho_pJ: p = 1 is the rotated highest weight state") {
  const Spin j(20);
  const double s = 0.3;
  const RMatrix d = clockpress::testing::wigner_d_by_eigen(j, repkit::rotation_angle(s));
  const Eigen::VectorXd col = d.col(0);
  const CMatrix expected = (col * col.transpose()).cast<Complex>();
  CHECK(max_abs_diff(rho_pJ(1.0, j, s), expected) < 1e-12);
}

TEST_CASE("rho_pJ: unit trace, Hermitian, spectrum preserved") {
  for (int tj : {1, 4, 9, 30}) {
    const Spin j(tj);
    const CMatrix rho = rho_pJ(0.7, j, 0.4);
    CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_hermitian(rho, 1e-13));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const auto w = block_spectrum(0.7, j);
    for (int k = 0; k < j.dim(); ++k)
      CHECK(es.eigenvalues()(j.dim() - 1 - k) == doctest::Approx(w[k]).epsilon(1e-9));
  }
}

TEST_CASE("evolve") {
  std::mt19937_64 rng(7);
  const CMatrix rho = clockpress::testing::random_density(5, rng);
  CHECK(max_abs_diff(evolve(rho, 0.0), rho) < 1e-15);
  CHECK(max_abs_diff(evolve(rho, 2 * M_PI), rho) < 1e-12);
  CHECK(max_abs_diff(evolve(evolve(rho, 0.4), 1.3), evolve(rho, 1.7)) < 1e-13);
  const CMatrix out = evolve(rho, 1.1);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(out(k, k) - rho(k, k)) < 1e-15);
  // exp(-i t J_z) rho exp(i t J_z) up to a global phase convention.
  const auto sm = clockpress::testing::spin_matrices(Spin(4));
  const CMatrix u = clockpress::testing::exp_minus_i(sm.jz, 1.1);
  CHECK(max_abs_diff(out, CMatrix(u * rho * u.adjoint())) < 1e-13);
}

TEST_CASE("build_block_state: n = 1 is the single-qubit clock state") {
  for (double t : {0.0, 0.9, 3.0}) {
    const ClockParams params{1, 0.35, 0.75, t};
    const BlockState state = build_block_state(params);
    REQUIRE(state.blocks.size() == 1);
    CHECK(state.blocks[0].weight == doctest::Approx(1.0));
    CHECK(max_abs_diff(state.blocks[0].op.dense(), oracle::qubit_state(0.35, 0.75, t)) < 1e-14);
  }
}

TEST_CASE("build_block_state: pure state, t = 0, s = 1/2") {
  const BlockState state = build_block_state({4, 0.5, 1.0, 0.0});
  REQUIRE(state.blocks.size() == 1);
  CHECK(state.blocks[0].j == Spin(4));
  const RMatrix d = repkit::wigner_d(Spin(4), M_PI / 2);
  const Eigen::VectorXd col = d.col(0);
  CHECK(max_abs_diff(state.blocks[0].op.dense(), CMatrix((col * col.transpose()).cast<Complex>())) < 1e-13);
  // Binomial amplitudes: |<2, m|psi>|^2 = C(4, 2 - m) / 16.
  const double expected[] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  for (int k = 0; k < 5; ++k)
    CHECK(state.blocks[0].op.dense()(k, k).real() == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("build_block_state: invariants") {
  for (int n : {3, 8, 40, 300}) {
    const ClockParams params{n, 0.4, 0.8, 1.3};
    const BlockState state = build_block_state(params);
    const auto q = qj_weights(n, 0.8);
    CHECK(state.total_weight() + state.skipped_mass == doctest::Approx(1.0).epsilon(1e-12));
    for (const Block& b : state.blocks) {
      CHECK(b.weight == weight_of(q, b.j));
      CHECK(b.op.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
      if (b.op.mat.rows() <= 120) CHECK(min_eigenvalue(b.op.mat) > -1e-10);
    }
    for (std::size_t i = 1; i < state.blocks.size(); ++i)
      CHECK(state.blocks[i - 1].j > state.blocks[i].j);
  }
}

TEST_CASE("build_block_state: trimmed blocks match the dense construction") {
  const int n = 200;
  const ClockParams params{n, 0.5, 0.9, 0.7};
  const BlockState state = build_block_state(params);
  for (const Block& b : state.blocks) {
    if (b.weight < 1e-12) continue;
    const CMatrix dense = evolve(rho_pJ(0.9, b.j, 0.5), 0.7);
    CHECK(max_abs_diff(b.op.dense(), dense) < 1e-12);
  }
}

TEST_CASE("build_block_state: spin restriction records the skipped mass") {
  const ClockParams params{20, 0.5, 0.8, 0.0};
  BuildOptions options;
  options.spins = std::vector<Spin>{Spin(20), Spin(18)};
  const BlockState state = build_block_state(params, options);
  CHECK(state.blocks.size() == 2);
  const auto q = qj_weights(20, 0.8);
  CHECK(state.skipped_mass == doctest::Approx(1.0 - q[0].q - q[1].q).epsilon(1e-12));
}

TEST_CASE("trace_distance: examples") {
  const BlockState a = build_block_state({1, 0.5, 1.0, 0.0});
  const BlockState b = build_block_state({1, 0.5, 1.0, M_PI});
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(trace_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  BlockState c = build_block_state({4, 0.5, 0.8, 0.0});
  BlockState top = c;
  top.blocks.resize(1);
  top.blocks[0].weight = 1.0;
  BlockState low = c;
  low.blocks.erase(low.blocks.begin());
  low.blocks.resize(1);
  low.blocks[0].weight = 1.0;
  CHECK(trace_distance(top, low) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_distance(a, c), std::invalid_argument);
}

TEST_CASE("trace_distance: metric properties on random block states") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 5;
    const BlockState a = random_block_state(n, rng);
    const BlockState b = random_block_state(n, rng);
    const BlockState c = random_block_state(n, rng);
    const double ab = trace_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);
    CHECK(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
    CHECK(trace_distance(a, c) <= ab + trace_distance(b, c) + 1e-12);
  }
}

TEST_CASE("trace_distance: agrees with the full space at small n") {
  const int n = 5;
  const oracle::CoupledBasis basis = oracle::coupled_basis(n);
  const BlockState a = build_block_state({n, 0.3, 0.8, 0.2});
  const BlockState b = build_block_state({n, 0.6, 0.7, 1.9});
  const CMatrix fa = oracle::embed_block_state(a, basis);
  const CMatrix fb = oracle::embed_block_state(b, basis);
  CHECK(trace_distance(a, b) == doctest::Approx(0.5 * hermitian_trace_norm(fa - fb)).epsilon(1e-10));
  CHECK(max_abs_diff(fa, oracle::full_product_state({n, 0.3, 0.8, 0.2})) < 1e-10);
}

}  // TEST_SUITE
