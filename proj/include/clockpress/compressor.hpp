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
#include <stdexcept>
#include <string>
#include <vector>

#include "clockpress/channels.hpp"
#include "clockpress/clockstate.hpp"

namespace clockpress {

enum class Mode { known, unknown };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Raised when a protocol cannot be configured for the requested size.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Contiguous run of J-grid positions (position k holds J = k + (n mod 2)/2).
struct Interval {
  int first = 0;
  int last = -1;
  int median = -1;  ///< first + floor(size/2); -1 when empty

  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
};

/// Partition of the J grid into b = floor(n^{1/2+x}) intervals: b-2 intervals
/// of width r, a remainder interval, and the singleton {n/2}.
struct Partition {
  int n = 0;
  double x = 0.0;
  int b = 0;
  int r = 0;
  /// Whether r satisfies r(b-2) < N-1 <= r(b-1) (N = floor(n/2)); when no
  /// integer does, r = ceil((N-1)/(b-1)) and trailing intervals may be empty.
  bool r_satisfies_constraint = false;
  std::vector<Interval> intervals;  ///< intervals[i-1] is L_i

  int top_position() const { return n / 2; }
  Spin spin_at(int position) const { return Spin(2 * position + n % 2); }
  int position_of(Spin j) const { return (j.twice - n % 2) / 2; }
  const Interval& interval(int index) const { return intervals.at(index - 1); }
  Spin median_spin(int index) const;
  std::vector<Spin> spins_in(int index) const;
};

Partition make_partition(int n, double x);
/// 1-based index i with J in L_i.
int index_of(const Partition& partition, Spin j);

struct RecordEntry {
  int index = 1;  ///< classical index (1 for known spectrum)
  double prob = 0.0;
  channels::Window window;
  CMatrix block;  ///< unit trace, |window| x |window|
};

/// Encoder output: a classical index distribution and, per index, the
/// quantum memory content restricted to its projection window.
struct CompressedRecord {
  int n = 0;
  ClockParams params;
  Mode mode = Mode::known;
  std::vector<RecordEntry> entries;
  int quantum_dim = 0;
  int classical_count = 1;
  /// Probability of spins left out of the encoding (underflow or restriction).
  double excluded_mass = 0.0;
};

struct PipelineOptions {
  /// Overrides the window half-width (memory-starved runs).
  std::optional<double> half_width;
  int threads = 1;
};

/// Grid spin nearest to min((p - 1/2)(n + 1), n/2); ties go to the larger spin.
Spin known_reference_spin(int n, double p);

CompressedRecord encode_known(const BlockState& state, const ClockParams& params,
                              const PipelineOptions& options = {});
/// Exact mixture over K with weights q_K of convert(J0, K, block).
BlockState decode_known(const CompressedRecord& record, int n, double p, double s);

CompressedRecord encode_unknown(const BlockState& state, const ClockParams& params,
                                const Partition& partition, const PipelineOptions& options = {});
/// Exact uniform mixture over K in L_i of convert(median_i, K, block_i).
BlockState decode_unknown(const CompressedRecord& record, const Partition& partition, int n);

/// The default t grid for the worst case over t.
std::vector<double> default_t_grid();

struct ErrorOptions {
  std::vector<double> t_grid = default_t_grid();
  /// For n > 512 restrict the computation to the bulk of q_J; the excluded
  /// mass widens the reported interval.
  bool restrict_tail = true;
  std::optional<double> half_width;
  int threads = 1;
};

struct ErrorReport {
  double epsilon = 0.0;  ///< max over the t grid
  std::vector<double> t_grid;
  std::vector<double> per_t;
  double covariance_spread = 0.0;  ///< max - min over the t grid
  /// Probability of spins outside the computed set.
  double tail_mass = 0.0;
  /// Rigorous upper bound on the true error: epsilon + 2 tail_mass + skipped.
  double epsilon_upper = 0.0;
  CompressedRecord record;  ///< encoder output at the first grid time
};

/// Worst-case trace distance over the t grid between the n-copy state and
/// decode(encode(.)), computed exactly in block coordinates.
ErrorReport compression_error(const ClockParams& params, Mode mode, double x,
                              const ErrorOptions& options = {});

/// (n/(2p-1))^{-1/2} + (3/2) [(p-1/2) n]^{-(1/8) ln(p/(1-p))}; second term 0 at p = 1.
double error_bound(int n, double p);

struct MemoryReport {
  double qubits_exact = 0.0;
  int qubits_ceil = 0;
  double cbits_exact = 0.0;
  int cbits_ceil = 0;
  double qubit_bound = 0.0;  ///< (1/2) log2 n + log2 log2 n + 1
  double cbit_bound = 0.0;   ///< (1/2 + x) log2 n
};

MemoryReport memory_report(const CompressedRecord& record, double x);

/// Known-spectrum pipeline with the window half-width forced to n^w / 2.
ErrorReport starved_report(const ClockParams& params, double width_exponent,
                           const ErrorOptions& options = {});
double starved_run(const ClockParams& params, double width_exponent);

}  // namespace clockpress
