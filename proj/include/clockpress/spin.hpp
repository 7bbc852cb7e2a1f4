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

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace clockpress {

/// Angular momentum quantum number stored as twice its value, so that
/// half-integer spins are exact. Magnetic numbers follow the same
/// convention (`twice_m`).
///
/// Matrix rows and columns of every spin-j operator in this library are
/// ordered by descending magnetic number: index k holds m = j - k.
struct Spin {
  int twice = 0;

  constexpr Spin() = default;
  constexpr explicit Spin(int twice_j) : twice(twice_j) {}

  static Spin from_double(double j);

  constexpr double value() const { return 0.5 * twice; }
  constexpr int dim() const { return twice + 1; }
  constexpr bool is_integer() const { return twice % 2 == 0; }

  /// Row index of magnetic number m (given as 2m).
  constexpr int index_of(int twice_m) const { return (twice - twice_m) / 2; }
  /// 2m for row index k.
  constexpr int twice_m_at(int k) const { return twice - 2 * k; }
  constexpr double m_at(int k) const { return 0.5 * twice - k; }

  bool contains(int twice_m) const;

  friend constexpr auto operator<=>(Spin, Spin) = default;
};

std::string to_string(Spin j);

/// Throws std::invalid_argument if twice_m is not a valid magnetic number of j.
void check_magnetic(Spin j, int twice_m, const char* what);

/// The total-spin grid of n qubits, ordered from n/2 downward.
std::vector<Spin> spin_grid(int n);

/// Validates that j lies on the total-spin grid of n qubits.
void check_on_grid(int n, Spin j);

}  // namespace clockpress
