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

#include "clockpress/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clockpress/repkit.hpp"

namespace clockpress::channels {

namespace {

IndexRange full_range(Spin j) { return {0, j.twice}; }

IndexRange output_range(Spin K, IndexRange natural, const std::optional<IndexRange>& requested) {
  if (requested) return intersect(*requested, full_range(K));
  return intersect(natural, full_range(K));
}

void check_input(Spin J, const SpinOperator& in, const char* what) {
  if (in.j != J) throw std::invalid_argument(std::string(what) + ": input is not a spin-J operator");
  if (in.mat.rows() != in.mat.cols()) throw std::invalid_argument(std::string(what) + ": non-square");
}

}  // namespace

std::vector<int> Window::kept_twice_m() const {
  std::vector<int> out;
  for (int k = rows.first; k <= rows.last; ++k) out.push_back(j.twice_m_at(k));
  return out;
}

int Window::nearest_row() const {
  const double x = j.value() - center;
  const int k = static_cast<int>(std::ceil(x - 0.5));
  return std::clamp(k, rows.first, rows.last);
}

Window make_window(Spin j, double s, double half_width) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("make_window: s must lie in (0, 1)");
  Window w;
  w.j = j;
  w.s = s;
  w.center = (2.0 * s - 1.0) * j.value();
  w.half_width = half_width;
  const double x = j.value() - w.center;  // row coordinate of the center
  IndexRange rows;
  if (half_width >= 0.0) {
    // The slack keeps grid points that sit exactly on the boundary in exact
    // arithmetic (n^w / 2 = 4 at n = 1024, w = 0.3) regardless of how pow rounds.
    const double reach = std::min(half_width + 1e-9, static_cast<double>(j.twice) + 1.0);
    rows = intersect({static_cast<int>(std::ceil(x - reach)), static_cast<int>(std::floor(x + reach))},
                     full_range(j));
  }
  if (rows.empty()) {
    const int k = std::clamp(static_cast<int>(std::ceil(x - 0.5)), 0, j.twice);
    rows = {k, k};
  }
  w.rows = rows;
  return w;
}

Window make_window(Spin j, double s) {
  const double jv = j.value();
  const double half_width = jv > 0.0 ? 0.5 * std::sqrt(jv) * std::log(jv) : 0.0;
  return make_window(j, s, half_width);
}

SpinOperator symmetric_clone(Spin J, Spin K, const SpinOperator& in,
                             std::optional<IndexRange> out_rows) {
  if (K < J) throw std::invalid_argument("symmetric_clone: requires K >= J");
  check_input(J, in, "symmetric_clone");
  const IndexRange src = in.support();
  const int twice_d = K.twice - J.twice;
  const Spin extra(twice_d);
  const IndexRange dst =
      output_range(K, {src.first, src.last + twice_d}, out_rows);
  SpinOperator out = SpinOperator::zero(K, dst);
  if (src.empty() || dst.empty()) return out;
  const double factor = static_cast<double>(J.twice + 1) / static_cast<double>(K.twice + 1);
  for (int l = 0; l <= twice_d; ++l) {
    const int first = std::max(dst.first, src.first + l);
    const int last = std::min(dst.last, src.last + l);
    if (first > last) continue;
    const int len = last - first + 1;
    RVector v(len);
    for (int i = 0; i < len; ++i) v(i) = repkit::stretched_cg(J, first + i - l, extra, l);
    const RMatrix weights = factor * v * v.transpose();
    out.mat.block(first - dst.first, first - dst.first, len, len).array() +=
        weights.cast<Complex>().array() *
        in.mat.block(first - l - src.first, first - l - src.first, len, len).array();
  }
  return out;
}

SpinOperator symmetric_trace_down(Spin J, Spin K, const SpinOperator& in,
                                  std::optional<IndexRange> out_rows) {
  if (K > J) throw std::invalid_argument("symmetric_trace_down: requires K <= J");
  check_input(J, in, "symmetric_trace_down");
  const IndexRange src = in.support();
  const int twice_d = J.twice - K.twice;
  const Spin extra(twice_d);
  const IndexRange dst = output_range(K, {src.first - twice_d, src.last}, out_rows);
  SpinOperator out = SpinOperator::zero(K, dst);
  if (src.empty() || dst.empty()) return out;
  for (int l = 0; l <= twice_d; ++l) {
    const int first = std::max(dst.first, src.first - l);
    const int last = std::min(dst.last, src.last - l);
    if (first > last) continue;
    const int len = last - first + 1;
    RVector e(len);
    for (int i = 0; i < len; ++i) e(i) = repkit::stretched_cg(K, first + i, extra, l);
    const RMatrix weights = e * e.transpose();
    out.mat.block(first - dst.first, first - dst.first, len, len).array() +=
        weights.cast<Complex>().array() *
        in.mat.block(first + l - src.first, first + l - src.first, len, len).array();
  }
  return out;
}

SpinOperator convert(Spin J, Spin K, const SpinOperator& in, std::optional<IndexRange> out_rows) {
  if (K > J) return symmetric_clone(J, K, in, out_rows);
  if (K < J) return symmetric_trace_down(J, K, in, out_rows);
  check_input(J, in, "convert");
  if (out_rows) return in.reshaped(intersect(*out_rows, full_range(K)));
  return in;
}

CMatrix symmetric_clone(Spin J, Spin K, const CMatrix& in) {
  return symmetric_clone(J, K, SpinOperator::full(J, in), IndexRange{0, K.twice}).mat;
}

CMatrix symmetric_trace_down(Spin J, Spin K, const CMatrix& in) {
  return symmetric_trace_down(J, K, SpinOperator::full(J, in), IndexRange{0, K.twice}).mat;
}

CMatrix convert(Spin J, Spin K, const CMatrix& in) {
  return convert(J, K, SpinOperator::full(J, in), IndexRange{0, K.twice}).mat;
}

SpinOperator default_fallback(const Window& window) {
  const int k = window.nearest_row();
  SpinOperator rho0 = SpinOperator::zero(window.j, {k, k});
  rho0.mat(0, 0) = 1.0;
  return rho0;
}

SpinOperator frequency_projection(const Window& window, const SpinOperator& in_on_window,
                                  Complex total_trace,
                                  const std::optional<SpinOperator>& fallback) {
  if (in_on_window.j != window.j) {
    throw std::invalid_argument("frequency_projection: window and input spins differ");
  }
  SpinOperator rho0 = fallback ? *fallback : default_fallback(window);
  if (rho0.j != window.j) throw std::invalid_argument("frequency_projection: fallback spin differs");
  const IndexRange fs = rho0.support();
  for (int r = fs.first; r <= fs.last; ++r) {
    for (int c = fs.first; c <= fs.last; ++c) {
      if ((!window.rows.contains(r) || !window.rows.contains(c)) && std::abs(rho0.at(r, c)) > 1e-12) {
        throw std::invalid_argument("frequency_projection: fallback has support outside the window");
      }
    }
  }
  SpinOperator out = in_on_window.reshaped(window.rows);
  const Complex lost = total_trace - out.mat.trace();
  out.mat += lost * rho0.reshaped(window.rows).mat;
  return out;
}

SpinOperator frequency_projection(const Window& window, const SpinOperator& in,
                                  const std::optional<SpinOperator>& fallback) {
  return frequency_projection(window, in, in.trace(), fallback);
}

CMatrix frequency_projection(Spin j, double s, const CMatrix& in,
                             const std::optional<CMatrix>& fallback) {
  const Window window = make_window(j, s);
  std::optional<SpinOperator> rho0;
  if (fallback) rho0 = SpinOperator::full(j, *fallback);
  return frequency_projection(window, SpinOperator::full(j, in), rho0).dense();
}

double projection_error_bound(Spin j, double p) {
  if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("projection_error_bound: p must lie in (1/2, 1]");
  if (p == 1.0) return 0.0;
  return 1.5 * std::pow(j.value(), -0.125 * std::log(p / (1.0 - p)));
}

}  // namespace clockpress::channels
