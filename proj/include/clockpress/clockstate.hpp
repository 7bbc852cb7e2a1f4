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

#include <map>
#include <optional>
#include <vector>

#include "clockpress/linalg.hpp"
#include "clockpress/spin.hpp"

namespace clockpress {

/// Parameters of the n-copy clock state: n copies of
/// p |phi_t><phi_t| + (1-p) |phi_t_perp><phi_t_perp| with
/// |phi_t> = sqrt(s)|0> + sqrt(1-s) e^{it}|1>.
struct ClockParams {
  int n = 1;
  double s = 0.5;
  double p = 1.0;
  double t = 0.0;

  /// Throws std::invalid_argument unless n >= 1, 0 < s < 1, 1/2 < p <= 1, 0 <= t < 2 pi.
  void validate() const;
};

struct SpinWeight {
  Spin j;
  double q = 0.0;
};

/// Probability of each total spin J on n copies (J from n/2 downward):
/// q_J = m_J [p(1-p)]^{n/2-J} N_J, N_J = sum_m p^{J+m} (1-p)^{J-m}.
/// Evaluated in log space so that large n does not underflow.
std::vector<SpinWeight> qj_weights(int n, double p);

/// The closed form (2J+1)/(2 J0) [B(n/2+J+1) - B(n/2-J)] with
/// B(k) = C(n,k) p^k (1-p)^{n-k} (zero outside 0..n) and J0 = (p-1/2)(n+1).
/// Diagnostic only: it is an approximation and is not a probability vector
/// at small n (it can be negative).
std::vector<SpinWeight> qj_weights_closed_form(int n, double p);

/// Normalized eigenvalues of the spin-J block, largest first:
/// w_c proportional to p^{2J-c} (1-p)^c, c = 0..2J.
std::vector<double> block_spectrum(double p, Spin J);

/// The spin-J block at t = 0, in the J_z eigenbasis: diag(block_spectrum)
/// in the rotated basis, conjugated by d^J(rotation_angle(s)).
CMatrix rho_pJ(double p, Spin J, double s);

/// Applies the n-qubit phase rotation |0><0| + e^{it}|1><1| (per qubit) to a
/// spin-J block: out(k, k') = e^{it(k - k')} mat(k, k'), i.e.
/// e^{-it(m - m')} in magnetic numbers.
CMatrix evolve(const CMatrix& mat, double t);
SpinOperator evolve(const SpinOperator& op, double t);

struct Block {
  Spin j;
  double weight = 0.0;
  SpinOperator op;  ///< unit-trace block
};

/// Block-diagonal operator sum_J weight_J (op_J (x) I_{m_J}/m_J). The
/// multiplicity factor is implicit: it is identical on every state this
/// library compares, and it cancels in the trace distance.
struct BlockState {
  int n = 0;
  std::vector<Block> blocks;  ///< ordered by descending J
  /// Mass of blocks that were not materialized (underflow or restriction).
  double skipped_mass = 0.0;

  const Block* find(Spin j) const;
  double total_weight() const;
};

/// Lazily produces the normalized blocks rho_{t,p,J} for a fixed set of
/// spins. Wigner columns are computed once by a single ladder sweep; blocks
/// are assembled on demand and stored trimmed to their numerical support.
class ClockBlockSource {
 public:
  ClockBlockSource(int n, double p, double s, const std::vector<Spin>& spins);

  bool has(Spin j) const { return entries_.count(j.twice) != 0; }
  SpinOperator block(Spin j, double t) const;

 private:
  struct Entry {
    int offset = 0;
    RMatrix columns;
    std::vector<double> weights;
  };
  int n_;
  std::map<int, Entry> entries_;
};

struct BuildOptions {
  /// Restrict the materialized blocks to these spins (others count as skipped).
  std::optional<std::vector<Spin>> spins;
};

/// Exact block decomposition of the n-copy clock state. Blocks with
/// q_J < 1e-300 are skipped and their mass is recorded.
BlockState build_block_state(const ClockParams& params, const BuildOptions& options = {});

/// (1/2) sum_J || a_J - b_J ||_1 with missing blocks treated as zero.
double trace_distance(const BlockState& a, const BlockState& b);

}  // namespace clockpress
