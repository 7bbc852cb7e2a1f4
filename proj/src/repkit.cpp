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

#include "clockpress/repkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace clockpress::repkit {

namespace {

constexpr int kLogFactorialTable = 1 << 14;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogFactorialTable);
    t[0] = 0.0;
    for (int k = 1; k < kLogFactorialTable; ++k) t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table;
}

double ipow(double base, int e) {
  double result = 1.0;
  for (int i = 0; i < e; ++i) result *= base;
  return result;
}

}  // namespace

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (k < kLogFactorialTable) return log_factorial_table()[k];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double clebsch_gordan(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M) {
  check_magnetic(j1, twice_m1, "clebsch_gordan(m1)");
  check_magnetic(j2, twice_m2, "clebsch_gordan(m2)");
  check_magnetic(J, twice_M, "clebsch_gordan(M)");
  if (twice_M != twice_m1 + twice_m2) return 0.0;
  if (J.twice < std::abs(j1.twice - j2.twice) || J.twice > j1.twice + j2.twice) return 0.0;
  if ((j1.twice + j2.twice + J.twice) % 2 != 0) return 0.0;

  // Every quantity below is an integer.
  const int a = (J.twice + j1.twice - j2.twice) / 2;   // J + j1 - j2
  const int b = (J.twice - j1.twice + j2.twice) / 2;   // J - j1 + j2
  const int c = (j1.twice + j2.twice - J.twice) / 2;   // j1 + j2 - J
  const int d = (j1.twice + j2.twice + J.twice) / 2;   // j1 + j2 + J
  const int jpM = (J.twice + twice_M) / 2;
  const int jmM = (J.twice - twice_M) / 2;
  const int j1m = (j1.twice - twice_m1) / 2;
  const int j1p = (j1.twice + twice_m1) / 2;
  const int j2m = (j2.twice - twice_m2) / 2;
  const int j2p = (j2.twice + twice_m2) / 2;
  const int e = (J.twice - j2.twice + twice_m1) / 2;   // J - j2 + m1
  const int f = (J.twice - j1.twice - twice_m2) / 2;   // J - j1 - m2

  const double log_prefactor =
      0.5 * (std::log(static_cast<double>(J.twice + 1)) + log_factorial(a) + log_factorial(b) +
             log_factorial(c) - log_factorial(d + 1) + log_factorial(jpM) + log_factorial(jmM) +
             log_factorial(j1m) + log_factorial(j1p) + log_factorial(j2m) + log_factorial(j2p));

  const int k_min = std::max({0, -e, -f});
  const int k_max = std::min({c, j1m, j2p});
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double log_term = log_prefactor - log_factorial(k) - log_factorial(c - k) -
                            log_factorial(j1m - k) - log_factorial(j2p - k) -
                            log_factorial(e + k) - log_factorial(f + k);
    const double term = std::exp(log_term);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

double stretched_cg(Spin j1, int k1, Spin j2, int k2) {
  if (k1 < 0 || k1 > j1.twice || k2 < 0 || k2 > j2.twice) {
    throw std::invalid_argument("stretched_cg: row index out of range");
  }
  return std::exp(0.5 * (log_binomial(j1.twice, k1) + log_binomial(j2.twice, k2) -
                         log_binomial(j1.twice + j2.twice, k1 + k2)));
}

RMatrix wigner_d_factorial(Spin j, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("wigner_d: theta must be finite");
  const int T = j.twice;
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  RMatrix d = RMatrix::Zero(j.dim(), j.dim());
  for (int r = 0; r <= T; ++r) {
    const int jpmp = T - r;  // j + m'
    const int jmmp = r;      // j - m'
    for (int col = 0; col <= T; ++col) {
      const int jpm = T - col;
      const int jmm = col;
      const int dm = r - col;  // m - m'
      const double log_pref = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) +
                                     log_factorial(jpm) + log_factorial(jmm));
      double sum = 0.0;
      for (int k = std::max(0, dm); k <= std::min(jpm, jmmp); ++k) {
        const double mag = std::exp(log_pref - log_factorial(jpm - k) - log_factorial(k) -
                                    log_factorial(jmmp - k) - log_factorial(k - dm));
        const double term = mag * ipow(c, T + dm - 2 * k) * ipow(s, 2 * k - dm);
        sum += ((k - dm) % 2 == 0) ? term : -term;
      }
      d(r, col) = sum;
    }
  }
  return d;
}

WignerLadder::WignerLadder(double theta, int max_columns)
    : cos_half_(std::cos(0.5 * theta)),
      sin_half_(std::sin(0.5 * theta)),
      max_columns_(max_columns),
      spin_(0),
      d_(RMatrix::Ones(1, 1)) {
  if (!std::isfinite(theta)) throw std::invalid_argument("WignerLadder: theta must be finite");
  if (max_columns == 0) throw std::invalid_argument("WignerLadder: need at least one column");
}

void WignerLadder::step() {
  const int T = spin_.twice + 1;
  const int rows = T + 1;
  const int cols = max_columns_ < 0 ? rows : std::min(max_columns_, rows);
  const RMatrix& old = d_;
  const int old_rows = static_cast<int>(old.rows());
  const int old_cols = static_cast<int>(old.cols());
  auto prev = [&](int r, int c) -> double {
    return (r >= 0 && r < old_rows && c >= 0 && c < old_cols) ? old(r, c) : 0.0;
  };
  const double a = cos_half_;
  const double b = sin_half_;
  RMatrix next(rows, cols);
  for (int c = 0; c < cols; ++c) {
    const double up_c = std::sqrt(static_cast<double>(T - c));  // sqrt(j + m)
    const double dn_c = std::sqrt(static_cast<double>(c));      // sqrt(j - m)
    for (int r = 0; r < rows; ++r) {
      const double up_r = std::sqrt(static_cast<double>(T - r));
      const double dn_r = std::sqrt(static_cast<double>(r));
      next(r, c) = (a * up_r * up_c * prev(r, c) - b * up_r * dn_c * prev(r, c - 1) +
                    b * dn_r * up_c * prev(r - 1, c) + a * dn_r * dn_c * prev(r - 1, c - 1)) /
                   T;
    }
  }
  d_ = std::move(next);
  spin_ = Spin(T);
}

void WignerLadder::advance_to(Spin j) {
  if (j < spin_) throw std::invalid_argument("WignerLadder: cannot step downward");
  while (spin_ < j) step();
}

RMatrix wigner_d(Spin j, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("wigner_d: theta must be finite");
  if (j.twice <= 16) return wigner_d_factorial(j, theta);
  WignerLadder ladder(theta);
  ladder.advance_to(j);
  return ladder.columns();
}

std::uint64_t multiplicity(int n, Spin J) {
  if (n < 0) throw std::invalid_argument("multiplicity: negative n");
  check_on_grid(n, J);
  const int k = (n - J.twice) / 2;  // n/2 - J
  // C(n, k) - C(n, k-1) in 128-bit arithmetic; intermediates stay below
  // C(120, 60) * 120 < 2^128.
  if (n > 120) throw std::overflow_error("multiplicity: n too large for exact evaluation");
  auto binom = [n](int kk) -> unsigned __int128 {
    if (kk < 0 || kk > n) return 0;
    unsigned __int128 r = 1;
    for (int i = 1; i <= kk; ++i) r = r * static_cast<unsigned>(n - kk + i) / static_cast<unsigned>(i);
    return r;
  };
  const unsigned __int128 value = binom(k) - binom(k - 1);
  if (value > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("multiplicity: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(value);
}

double log_multiplicity(int n, Spin J) {
  check_on_grid(n, J);
  const int k = (n - J.twice) / 2;
  return log_binomial(n, k) + std::log(static_cast<double>(J.twice + 1)) -
         std::log(static_cast<double>(n - k + 1));
}

double rotation_angle(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("rotation_angle: s must lie in (0, 1)");
  return 2.0 * std::acos(std::sqrt(s));
}

}  // namespace clockpress::repkit
