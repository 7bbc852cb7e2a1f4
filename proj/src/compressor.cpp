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

#include "clockpress/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "clockpress/parallel.hpp"

namespace clockpress {

namespace {

// Blocks lighter than this are left out of the error pipeline; their mass is
// carried in the reported tail.
constexpr double kNegligibleWeight = 1e-30;
constexpr double kUnderflowWeight = 1e-300;
constexpr double kRestrictedIntervalMass = 1e-12;
constexpr int kRestrictionThreshold = 512;

using BlockGetter = std::function<SpinOperator(Spin)>;

RecordEntry encode_entry(int index, const channels::Window& window,
                         const std::vector<SpinWeight>& members, const BlockGetter& get,
                         int threads) {
  const Spin ref = window.j;
  std::vector<SpinOperator> parts(members.size());
  parallel_for(members.size(), threads, [&](std::size_t i) {
    parts[i] = channels::convert(members[i].j, ref, get(members[i].j), window.rows);
  });
  SpinOperator sigma = SpinOperator::zero(ref, window.rows);
  double prob = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    sigma.mat += members[i].q * parts[i].mat;
    prob += members[i].q;
  }
  RecordEntry entry;
  entry.index = index;
  entry.prob = prob;
  entry.window = window;
  if (prob > 0.0) {
    sigma.mat /= prob;
    entry.block = channels::frequency_projection(window, sigma, Complex(1.0, 0.0)).mat;
  } else {
    entry.block = channels::default_fallback(window).reshaped(window.rows).mat;
  }
  return entry;
}

SpinOperator decoded_block(const RecordEntry& entry, Spin k) {
  const SpinOperator memory(entry.window.j, entry.window.rows.first, entry.block);
  return channels::convert(entry.window.j, k, memory);
}

struct OutputItem {
  Spin k;
  double weight = 0.0;
  std::size_t entry = 0;
};

std::vector<OutputItem> unknown_output_plan(const CompressedRecord& record,
                                            const Partition& partition) {
  std::vector<OutputItem> plan;
  for (std::size_t e = 0; e < record.entries.size(); ++e) {
    const RecordEntry& entry = record.entries[e];
    const std::vector<Spin> members = partition.spins_in(entry.index);
    for (Spin k : members) plan.push_back({k, entry.prob / members.size(), e});
  }
  return plan;
}

channels::Window window_for(Spin ref, double s, const std::optional<double>& half_width) {
  return half_width ? channels::make_window(ref, s, *half_width) : channels::make_window(ref, s);
}

int ceil_log2(int count) {
  int bits = 0;
  while ((1LL << bits) < count) ++bits;
  return bits;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::known ? "known" : "unknown"; }

Mode parse_mode(const std::string& text) {
  if (text == "known") return Mode::known;
  if (text == "unknown") return Mode::unknown;
  throw std::invalid_argument("mode must be 'known' or 'unknown', got '" + text + "'");
}

Spin Partition::median_spin(int index) const {
  const Interval& iv = interval(index);
  if (iv.empty()) throw std::invalid_argument("Partition: interval " + std::to_string(index) + " is empty");
  return spin_at(iv.median);
}

std::vector<Spin> Partition::spins_in(int index) const {
  const Interval& iv = interval(index);
  std::vector<Spin> out;
  for (int k = iv.last; k >= iv.first; --k) out.push_back(spin_at(k));
  return out;
}

Partition make_partition(int n, double x) {
  if (n < 4) throw std::invalid_argument("make_partition: n must be at least 4");
  if (!(x > 0.0 && x < 0.5)) throw std::invalid_argument("make_partition: x must lie in (0, 1/2)");
  Partition part;
  part.n = n;
  part.x = x;
  part.b = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 0.5 + x) + 1e-9));
  if (part.b < 3) {
    throw ConfigurationError("make_partition: n = " + std::to_string(n) + " gives b = " +
                             std::to_string(part.b) + " < 3 intervals for x = " + std::to_string(x));
  }
  const int top = n / 2;
  const int span = top - 1;  // N - 1
  const int b = part.b;
  part.r = std::max(1, (span + b - 2) / (b - 1));
  part.r_satisfies_constraint = part.r * (b - 2) < span && span <= part.r * (b - 1);
  for (int m = 1; m <= b - 2; ++m) {
    part.intervals.push_back({(m - 1) * part.r, std::min(m * part.r - 1, top - 1)});
  }
  part.intervals.push_back({(b - 2) * part.r, top - 1});
  part.intervals.push_back({top, top});
  for (Interval& iv : part.intervals) {
    if (iv.empty()) {
      iv = Interval{};
    } else {
      iv.median = iv.first + iv.size() / 2;
    }
  }
  return part;
}

int index_of(const Partition& partition, Spin j) {
  check_on_grid(partition.n, j);
  const int k = partition.position_of(j);
  const int top = partition.top_position();
  if (k == top) return partition.b;
  if (k < (partition.b - 2) * partition.r) return k / partition.r + 1;
  return partition.b - 1;
}

Spin known_reference_spin(int n, double p) {
  const double j0 = std::min((p - 0.5) * (n + 1), 0.5 * n);
  const int parity = n % 2;
  const int top = n / 2;
  const int k = std::clamp(static_cast<int>(std::round(j0 - 0.5 * parity)), 0, top);
  return Spin(2 * k + parity);
}

CompressedRecord encode_known(const BlockState& state, const ClockParams& params,
                              const PipelineOptions& options) {
  params.validate();
  if (state.n != params.n) throw std::invalid_argument("encode_known: n mismatch");
  const Spin ref = known_reference_spin(params.n, params.p);
  const channels::Window window = window_for(ref, params.s, options.half_width);
  std::vector<SpinWeight> members;
  for (const Block& b : state.blocks) members.push_back({b.j, b.weight});
  const BlockGetter get = [&](Spin j) { return state.find(j)->op; };

  CompressedRecord record;
  record.n = params.n;
  record.params = params;
  record.mode = Mode::known;
  record.entries.push_back(encode_entry(1, window, members, get, options.threads));
  record.quantum_dim = window.size();
  record.classical_count = 1;
  record.excluded_mass = state.skipped_mass;
  return record;
}

BlockState decode_known(const CompressedRecord& record, int n, double p, double s) {
  if (record.entries.size() != 1) throw std::invalid_argument("decode_known: expected a single entry");
  (void)s;  // the window carries s
  BlockState out;
  out.n = n;
  for (const SpinWeight& sw : qj_weights(n, p)) {
    if (sw.q < kUnderflowWeight) {
      out.skipped_mass += sw.q;
      continue;
    }
    out.blocks.push_back({sw.j, sw.q, decoded_block(record.entries.front(), sw.j)});
  }
  return out;
}

CompressedRecord encode_unknown(const BlockState& state, const ClockParams& params,
                                const Partition& partition, const PipelineOptions& options) {
  params.validate();
  if (state.n != params.n || partition.n != params.n) {
    throw std::invalid_argument("encode_unknown: n mismatch");
  }
  std::map<int, std::vector<SpinWeight>> groups;
  for (const Block& b : state.blocks) groups[index_of(partition, b.j)].push_back({b.j, b.weight});
  const BlockGetter get = [&](Spin j) { return state.find(j)->op; };

  CompressedRecord record;
  record.n = params.n;
  record.params = params;
  record.mode = Mode::unknown;
  record.classical_count = partition.b;
  record.excluded_mass = state.skipped_mass;
  for (const auto& [index, members] : groups) {
    double mass = 0.0;
    for (const SpinWeight& sw : members) mass += sw.q;
    if (!(mass > 0.0)) continue;
    const channels::Window window =
        window_for(partition.median_spin(index), params.s, options.half_width);
    record.entries.push_back(encode_entry(index, window, members, get, options.threads));
    record.quantum_dim = std::max(record.quantum_dim, window.size());
  }
  return record;
}

BlockState decode_unknown(const CompressedRecord& record, const Partition& partition, int n) {
  BlockState out;
  out.n = n;
  for (const OutputItem& item : unknown_output_plan(record, partition)) {
    out.blocks.push_back({item.k, item.weight, decoded_block(record.entries[item.entry], item.k)});
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const Block& a, const Block& b) { return a.j > b.j; });
  out.skipped_mass = record.excluded_mass;
  return out;
}

std::vector<double> default_t_grid() { return {0.0, 0.7, std::numbers::pi, 2.1}; }

ErrorReport compression_error(const ClockParams& params, Mode mode, double x,
                              const ErrorOptions& options) {
  params.validate();
  if (options.t_grid.empty()) throw std::invalid_argument("compression_error: empty t grid");
  const int n = params.n;
  const std::vector<SpinWeight> weights = qj_weights(n, params.p);
  std::map<int, double> q_of;
  for (const SpinWeight& sw : weights) q_of[sw.j.twice] = sw.q;
  const bool restrict = options.restrict_tail && n > kRestrictionThreshold;

  // Spins that take part in the computation; everything else is tail.
  std::vector<Spin> included;
  std::optional<Partition> partition;
  Spin ref;
  if (mode == Mode::known) {
    ref = known_reference_spin(n, params.p);
    const double width =
        restrict ? std::ceil(4.0 * std::sqrt(n * params.p * (1.0 - params.p) * std::log(n)))
                 : static_cast<double>(n);
    for (const SpinWeight& sw : weights) {
      if (std::abs(sw.j.value() - ref.value()) <= width && sw.q >= kNegligibleWeight) {
        included.push_back(sw.j);
      }
    }
  } else {
    partition = make_partition(n, x);
    const double cutoff = restrict ? kRestrictedIntervalMass : kNegligibleWeight;
    for (int i = partition->b; i >= 1; --i) {
      if (partition->interval(i).empty()) continue;
      const std::vector<Spin> members = partition->spins_in(i);
      double mass = 0.0;
      for (Spin j : members) mass += q_of[j.twice];
      if (mass > cutoff) included.insert(included.end(), members.begin(), members.end());
    }
  }
  std::sort(included.begin(), included.end(), std::greater<>());

  std::vector<Spin> built;  // spins whose target block is materialized
  double tail = 0.0;
  {
    std::map<int, bool> in_set;
    for (Spin j : included) in_set[j.twice] = true;
    for (const SpinWeight& sw : weights) {
      if (in_set.count(sw.j.twice) && sw.q >= kUnderflowWeight) {
        built.push_back(sw.j);
      } else {
        tail += sw.q;
      }
    }
  }
  const ClockBlockSource source(n, params.p, params.s, built);

  ErrorReport report;
  report.t_grid = options.t_grid;
  report.tail_mass = tail;
  double worst_skipped = 0.0;

  for (std::size_t ti = 0; ti < options.t_grid.size(); ++ti) {
    const double t = options.t_grid[ti];
    ClockParams at_t = params;
    at_t.t = t;
    const BlockGetter get = [&](Spin j) { return source.block(j, t); };

    CompressedRecord record;
    record.n = n;
    record.params = at_t;
    record.mode = mode;
    record.excluded_mass = tail;
    std::vector<OutputItem> plan;
    if (mode == Mode::known) {
      std::vector<SpinWeight> members;
      for (Spin j : built) members.push_back({j, q_of[j.twice]});
      const channels::Window window = window_for(ref, params.s, options.half_width);
      record.entries.push_back(encode_entry(1, window, members, get, options.threads));
      record.quantum_dim = window.size();
      record.classical_count = 1;
      for (Spin k : built) plan.push_back({k, q_of[k.twice], 0});
    } else {
      std::map<int, std::vector<SpinWeight>> groups;
      for (Spin j : built) groups[index_of(*partition, j)].push_back({j, q_of[j.twice]});
      record.classical_count = partition->b;
      for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        const channels::Window window =
            window_for(partition->median_spin(it->first), params.s, options.half_width);
        record.entries.push_back(encode_entry(it->first, window, it->second, get, options.threads));
        record.quantum_dim = std::max(record.quantum_dim, window.size());
      }
      plan = unknown_output_plan(record, *partition);
    }

    // Pair each included spin with its decoded weight and entry.
    std::map<int, const OutputItem*> decoded;
    for (const OutputItem& item : plan) decoded[item.k.twice] = &item;
    std::map<int, bool> is_built;
    for (Spin j : built) is_built[j.twice] = true;

    std::vector<double> contribution(included.size(), 0.0);
    std::vector<double> skipped(included.size(), 0.0);
    parallel_for(included.size(), options.threads, [&](std::size_t i) {
      const Spin k = included[i];
      const double wt = is_built.count(k.twice) ? q_of.at(k.twice) : 0.0;
      const auto it = decoded.find(k.twice);
      const double wd = it != decoded.end() ? it->second->weight : 0.0;
      if (wt < kNegligibleWeight && wd < kNegligibleWeight) {
        skipped[i] = 0.5 * (wt + wd);
        return;
      }
      const SpinOperator empty = SpinOperator::zero(k, {0, -1});
      const SpinOperator target = wt > 0.0 ? source.block(k, t) : empty;
      const SpinOperator output =
          wd > 0.0 ? decoded_block(record.entries[it->second->entry], k) : empty;
      contribution[i] = 0.5 * weighted_difference_trace_norm(target, wt, output, wd);
    });
    double eps = 0.0;
    double skip = 0.0;
    for (std::size_t i = 0; i < included.size(); ++i) {
      eps += contribution[i];
      skip += skipped[i];
    }
    report.per_t.push_back(eps);
    worst_skipped = std::max(worst_skipped, skip);
    if (ti == 0) report.record = std::move(record);
  }
  const auto [lo, hi] = std::minmax_element(report.per_t.begin(), report.per_t.end());
  report.epsilon = *hi;
  report.covariance_spread = *hi - *lo;
  report.epsilon_upper = report.epsilon + 2.0 * tail + worst_skipped;
  return report;
}

double error_bound(int n, double p) {
  if (!(p > 0.5 && p <= 1.0)) throw std::invalid_argument("error_bound: p must lie in (1/2, 1]");
  const double first = std::pow(n / (2.0 * p - 1.0), -0.5);
  if (p == 1.0) return first;
  return first + 1.5 * std::pow((p - 0.5) * n, -0.125 * std::log(p / (1.0 - p)));
}

MemoryReport memory_report(const CompressedRecord& record, double x) {
  if (record.quantum_dim < 1 || record.classical_count < 1) {
    throw std::invalid_argument("memory_report: record has no memory content");
  }
  MemoryReport m;
  const double log2n = std::log2(static_cast<double>(record.n));
  m.qubits_exact = std::log2(static_cast<double>(record.quantum_dim));
  m.qubits_ceil = ceil_log2(record.quantum_dim);
  m.cbits_exact = std::log2(static_cast<double>(record.classical_count));
  m.cbits_ceil = ceil_log2(record.classical_count);
  m.qubit_bound = 0.5 * log2n + std::log2(log2n) + 1.0;
  m.cbit_bound = (0.5 + x) * log2n;
  return m;
}

ErrorReport starved_report(const ClockParams& params, double width_exponent,
                           const ErrorOptions& options) {
  if (!(width_exponent > 0.0 && width_exponent < 0.5)) {
    throw std::invalid_argument("starved_run: width exponent must lie in (0, 1/2)");
  }
  ErrorOptions opts = options;
  opts.half_width = 0.5 * std::pow(static_cast<double>(params.n), width_exponent);
  return compression_error(params, Mode::known, 0.1, opts);
}

double starved_run(const ClockParams& params, double width_exponent) {
  return starved_report(params, width_exponent).epsilon;
}

}  // namespace clockpress
