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

#include <cstdint>

#include "clockpress/linalg.hpp"
#include "clockpress/spin.hpp"

/// Representation-theoretic kernels for SU(2).
///
/// Sign conventions are Condon-Shortley throughout: Clebsch-Gordan
/// coefficients are real, <j1 j1; j2 (J-j1) | J J> > 0, and the Wigner
/// small-d matrix is d^j_{m'm}(theta) = <j m'| exp(-i theta J_y) |j m>.
/// Qubit |0> is the m = +1/2 state.
namespace clockpress::repkit {

/// ln(k!) for k >= 0; tabulated for small k.
double log_factorial(int k);
/// ln C(n, k); -infinity outside 0 <= k <= n.
double log_binomial(int n, int k);

/// <j1 m1; j2 m2 | J M> by the Racah sum in log-factorial form.
/// Magnetic numbers are passed as twice their value.
double clebsch_gordan(Spin j1, int twice_m1, Spin j2, int twice_m2, Spin J, int twice_M);

/// Closed form of the stretched coefficient <j1 m1; j2 m2 | j1+j2, m1+m2>
/// in terms of row indices (k1 = j1 - m1, k2 = j2 - m2):
/// sqrt(C(2 j1, k1) C(2 j2, k2) / C(2 j1 + 2 j2, k1 + k2)).
double stretched_cg(Spin j1, int k1, Spin j2, int k2);

/// Full (2j+1)x(2j+1) Wigner small-d matrix. Small spins use the explicit
/// factorial sum; larger spins use the half-step ladder, which is stable.
RMatrix wigner_d(Spin j, double theta);
/// Explicit factorial-sum evaluation (accurate for 2j <= 16 or so).
RMatrix wigner_d_factorial(Spin j, double theta);

/// Builds d^j(theta) by repeatedly coupling a spin-1/2 onto d^{j-1/2}:
///
///   d^j_{m'm} = [ a sqrt((j+m')(j+m)) d_{m'-1/2,m-1/2} - b sqrt((j+m')(j-m)) d_{m'-1/2,m+1/2}
///               + b sqrt((j-m')(j+m)) d_{m'+1/2,m-1/2} + a sqrt((j-m')(j-m)) d_{m'+1/2,m+1/2} ] / 2j
///
/// with a = cos(theta/2), b = sin(theta/2). Keeping only the first
/// `max_columns` columns (m = j, j-1, ...) is closed under the step, which is
/// what makes long ladders of nearly coherent states cheap.
class WignerLadder {
 public:
  explicit WignerLadder(double theta, int max_columns = -1);

  Spin spin() const { return spin_; }
  /// Rows m' = j..-j, columns m = j, j-1, ... (at most max_columns).
  const RMatrix& columns() const { return d_; }
  void step();
  void advance_to(Spin j);

 private:
  double cos_half_;
  double sin_half_;
  int max_columns_;
  Spin spin_;
  RMatrix d_;
};

/// Number of spin-J irreps in n qubits: C(n, n/2-J) - C(n, n/2-J-1).
/// Exact; throws std::overflow_error when the value does not fit in 64 bits.
std::uint64_t multiplicity(int n, Spin J);
/// ln of the multiplicity, valid for any n.
double log_multiplicity(int n, Spin J);

/// y-rotation angle theta = 2 acos(sqrt(s)) taking |0> to sqrt(s)|0> + sqrt(1-s)|1>.
double rotation_angle(double s);

}  // namespace clockpress::repkit
