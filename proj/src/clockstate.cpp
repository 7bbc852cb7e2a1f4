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

#include "clockpress/clockstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "clockpress/repkit.hpp"

namespace clockpress {

namespace {

constexpr double kUnderflowWeight = 1e-300;
// Rotated-basis columns whose relative weight falls below this are dropped;
// their contribution is far below double precision.
constexpr double kColumnCutoff = 1e-20;
constexpr double kSupportCutoff = 1e-34;

void check_spectrum(double p) {
  if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("spectrum p must lie in (1/2, 1]");
}

// ln N_J - 2J ln p = ln sum_{c=0}^{2J} r^c with r = (1-p)/p < 1.
double log_geometric_sum(double r, int terms) {
  if (r == 0.0) return 0.0;
  return std::log1p(-std::pow(r, terms)) - std::log1p(-r);
}

int column_budget(double p) {
  if (p == 1.0) return 1;
  const double r = (1.0 - p) / p;
  const double needed = std::ceil(std::log(kColumnCutoff) / std::log(r));
  return static_cast<int>(std::min(needed, 1e8)) + 1;
}

}  // namespace

void ClockParams::validate() const {
  if (n < 1) throw std::invalid_argument("ClockParams: n must be positive");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("ClockParams: s must lie in (0, 1)");
  check_spectrum(p);
  if (!(t >= 0.0 && t < 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("ClockParams: t must lie in [0, 2 pi)");
  }
}

std::vector<SpinWeight> qj_weights(int n, double p) {
  if (n < 1) throw std::invalid_argument("qj_weights: n must be positive");
  check_spectrum(p);
  std::vector<SpinWeight> out;
  for (Spin j : spin_grid(n)) {
    if (p == 1.0) {
      out.push_back({j, j.twice == n ? 1.0 : 0.0});
      continue;
    }
    const double r = (1.0 - p) / p;
    const int k = (n - j.twice) / 2;  // n/2 - J
    const double log_q = repkit::log_multiplicity(n, j) + k * (std::log(p) + std::log1p(-p)) +
                         j.twice * std::log(p) + log_geometric_sum(r, j.twice + 1);
    out.push_back({j, std::exp(log_q)});
  }
  return out;
}

std::vector<SpinWeight> qj_weights_closed_form(int n, double p) {
  if (n < 1) throw std::invalid_argument("qj_weights_closed_form: n must be positive");
  check_spectrum(p);
  const double j0 = (p - 0.5) * (n + 1);
  auto B = [&](int k) -> double {
    if (k < 0 || k > n) return 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(repkit::log_binomial(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
  };
  std::vector<SpinWeight> out;
  for (Spin j : spin_grid(n)) {
    const int upper = (n + j.twice) / 2 + 1;  // n/2 + J + 1
    const int lower = (n - j.twice) / 2;      // n/2 - J
    out.push_back({j, (j.twice + 1) / (2.0 * j0) * (B(upper) - B(lower))});
  }
  return out;
}

std::vector<double> block_spectrum(double p, Spin J) {
  check_spectrum(p);
  std::vector<double> w(J.dim(), 0.0);
  if (p == 1.0) {
    w[0] = 1.0;
    return w;
  }
  const double r = (1.0 - p) / p;
  const double norm = std::exp(-log_geometric_sum(r, J.dim()));
  double power = 1.0;
  for (int c = 0; c < J.dim(); ++c) {
    w[c] = power * norm;
    power *= r;
  }
  return w;
}

CMatrix rho_pJ(double p, Spin J, double s) {
  const std::vector<double> w = block_spectrum(p, J);
  const RMatrix d = repkit::wigner_d(J, repkit::rotation_angle(s));
  const RVector wv = Eigen::Map<const RVector>(w.data(), static_cast<Eigen::Index>(w.size()));
  const RMatrix rho = d * wv.asDiagonal() * d.transpose();
  return rho.cast<Complex>();
}

CMatrix evolve(const CMatrix& mat, double t) {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("evolve: matrix must be square");
  return evolve(SpinOperator(Spin(static_cast<int>(mat.rows()) - 1), 0, mat), t).mat;
}

SpinOperator evolve(const SpinOperator& op, double t) {
  SpinOperator out = op;
  if (t == 0.0) return out;
  const int d = static_cast<int>(op.mat.rows());
  std::vector<Complex> phase(d);
  for (int k = 0; k < d; ++k) phase[k] = std::polar(1.0, t * (op.offset + k));
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) out.mat(r, c) *= phase[r] * std::conj(phase[c]);
  }
  return out;
}

const Block* BlockState::find(Spin j) const {
  for (const Block& b : blocks) {
    if (b.j == j) return &b;
  }
  return nullptr;
}

double BlockState::total_weight() const {
  double sum = 0.0;
  for (const Block& b : blocks) sum += b.weight;
  return sum;
}

ClockBlockSource::ClockBlockSource(int n, double p, double s, const std::vector<Spin>& spins)
    : n_(n) {
  check_spectrum(p);
  std::set<int> wanted;
  for (Spin j : spins) {
    check_on_grid(n, j);
    wanted.insert(j.twice);
  }
  if (wanted.empty()) return;
  repkit::WignerLadder ladder(repkit::rotation_angle(s), column_budget(p));
  for (int twice : wanted) {
    const Spin j(twice);
    ladder.advance_to(j);
    const RMatrix& cols = ladder.columns();
    std::vector<double> w = block_spectrum(p, j);
    w.resize(cols.cols());
    // Diagonal of the block fixes its numerical support.
    RVector diag = RVector::Zero(cols.rows());
    for (Eigen::Index c = 0; c < cols.cols(); ++c) diag += w[c] * cols.col(c).cwiseAbs2();
    int lo = 0;
    int hi = static_cast<int>(diag.size()) - 1;
    while (lo < hi && diag(lo) < kSupportCutoff) ++lo;
    while (hi > lo && diag(hi) < kSupportCutoff) --hi;
    Entry e;
    e.offset = lo;
    e.columns = cols.middleRows(lo, hi - lo + 1);
    e.weights = std::move(w);
    entries_.emplace(twice, std::move(e));
  }
}

SpinOperator ClockBlockSource::block(Spin j, double t) const {
  auto it = entries_.find(j.twice);
  if (it == entries_.end()) {
    throw std::invalid_argument("ClockBlockSource: spin " + to_string(j) + " was not prepared");
  }
  const Entry& e = it->second;
  const RVector w =
      Eigen::Map<const RVector>(e.weights.data(), static_cast<Eigen::Index>(e.weights.size()));
  const RMatrix rho = e.columns * w.asDiagonal() * e.columns.transpose();
  return evolve(SpinOperator(j, e.offset, rho.cast<Complex>()), t);
}

BlockState build_block_state(const ClockParams& params, const BuildOptions& options) {
  params.validate();
  std::set<int> allowed;
  if (options.spins) {
    for (Spin j : *options.spins) allowed.insert(j.twice);
  }
  BlockState state;
  state.n = params.n;
  std::vector<SpinWeight> kept;
  for (const SpinWeight& sw : qj_weights(params.n, params.p)) {
    const bool permitted = !options.spins || allowed.count(sw.j.twice) != 0;
    if (sw.q < kUnderflowWeight || !permitted) {
      state.skipped_mass += sw.q;
      continue;
    }
    kept.push_back(sw);
  }
  std::vector<Spin> spins;
  for (const SpinWeight& sw : kept) spins.push_back(sw.j);
  const ClockBlockSource source(params.n, params.p, params.s, spins);
  for (const SpinWeight& sw : kept) {
    state.blocks.push_back({sw.j, sw.q, source.block(sw.j, params.t)});
  }
  return state;
}

double trace_distance(const BlockState& a, const BlockState& b) {
  if (a.n != b.n) throw std::invalid_argument("trace_distance: states have different n");
  std::set<int, std::greater<>> spins;
  for (const Block& blk : a.blocks) spins.insert(blk.j.twice);
  for (const Block& blk : b.blocks) spins.insert(blk.j.twice);
  double sum = 0.0;
  for (int twice : spins) {
    const Spin j(twice);
    const Block* ba = a.find(j);
    const Block* bb = b.find(j);
    const SpinOperator empty = SpinOperator::zero(j, {0, -1});
    sum += weighted_difference_trace_norm(ba ? ba->op : empty, ba ? ba->weight : 0.0,
                                          bb ? bb->op : empty, bb ? bb->weight : 0.0);
  }
  return 0.5 * sum;
}

}  // namespace clockpress
