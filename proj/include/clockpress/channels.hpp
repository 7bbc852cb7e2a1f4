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

#include <optional>
#include <vector>

#include "clockpress/linalg.hpp"
#include "clockpress/spin.hpp"

/// Channels between spin blocks, written in symmetric-subspace
/// coordinates: spin J is the symmetric subspace of 2J qubits with |J, m>
/// the Dicke state holding J + m zeros.
namespace clockpress::channels {

/// Magnetic numbers kept by the frequency projection:
/// |m - (2s-1) J| <= sqrt(J) ln(J) / 2. Never empty: when no grid point
/// qualifies, the one nearest the center is kept.
struct Window {
  Spin j;
  double s = 0.5;
  double center = 0.0;
  double half_width = 0.0;
  IndexRange rows;  ///< kept row indices (k = J - m), contiguous

  std::vector<int> kept_twice_m() const;
  int size() const { return rows.size(); }
  /// Row of the kept magnetic number nearest to the center (ties go to the larger m).
  int nearest_row() const;
};

Window make_window(Spin j, double s);
/// Same window rule with an explicit half-width (in units of m).
Window make_window(Spin j, double s, double half_width);

/// Optimal universal cloner from 2J to 2K qubits (K >= J):
/// out(m, m') = (2J+1)/(2K+1) sum_{m2} c(m, m2) c(m', m2) in(m - m2, m' - m2)
/// with c the stretched Clebsch-Gordan coefficients of J (x) (K-J) -> K.
SpinOperator symmetric_clone(Spin J, Spin K, const SpinOperator& in,
                             std::optional<IndexRange> out_rows = std::nullopt);
/// Partial trace of 2(J-K) of the 2J qubits (K <= J), which stays inside the
/// symmetric subspace of the remaining 2K qubits.
SpinOperator symmetric_trace_down(Spin J, Spin K, const SpinOperator& in,
                                  std::optional<IndexRange> out_rows = std::nullopt);
/// Cloner if K > J, partial trace if K < J, identity otherwise. When
/// out_rows is given only that block of the output is computed.
SpinOperator convert(Spin J, Spin K, const SpinOperator& in,
                     std::optional<IndexRange> out_rows = std::nullopt);

CMatrix symmetric_clone(Spin J, Spin K, const CMatrix& in);
CMatrix symmetric_trace_down(Spin J, Spin K, const CMatrix& in);
CMatrix convert(Spin J, Spin K, const CMatrix& in);

/// Default fallback state: pure state on the kept row nearest the center.
SpinOperator default_fallback(const Window& window);

/// P in P + (Tr[in] - Tr[P in P]) rho0, supported on the window. The map
/// is linear in `in`, so sub-normalized inputs are handled consistently.
/// Throws std::invalid_argument if the fallback has weight outside the window.
SpinOperator frequency_projection(const Window& window, const SpinOperator& in,
                                  const std::optional<SpinOperator>& fallback = std::nullopt);
/// Variant for inputs only known on (a superset of) the window: the total
/// trace of the full input is supplied separately.
SpinOperator frequency_projection(const Window& window, const SpinOperator& in_on_window,
                                  Complex total_trace,
                                  const std::optional<SpinOperator>& fallback = std::nullopt);
CMatrix frequency_projection(Spin j, double s, const CMatrix& in,
                             const std::optional<CMatrix>& fallback = std::nullopt);

/// Leading-order bound (3/2) J^{-(1/8) ln(p/(1-p))} on the projection error;
/// 0 at p = 1.
double projection_error_bound(Spin j, double p);

}  // namespace clockpress::channels
