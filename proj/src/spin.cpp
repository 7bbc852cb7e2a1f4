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

#include "clockpress/spin.hpp"

#include <cmath>
#include <cstdlib>

namespace clockpress {

Spin Spin::from_double(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!(std::abs(twice - rounded) < 1e-9) || rounded < 0) {
    throw std::invalid_argument("spin must be a non-negative multiple of 1/2, got " +
                                std::to_string(j));
  }
  return Spin(static_cast<int>(rounded));
}

bool Spin::contains(int twice_m) const {
  return std::abs(twice_m) <= twice && (twice - twice_m) % 2 == 0;
}

std::string to_string(Spin j) {
  if (j.is_integer()) return std::to_string(j.twice / 2);
  return std::to_string(j.twice) + "/2";
}

void check_magnetic(Spin j, int twice_m, const char* what) {
  if (j.twice < 0) throw std::invalid_argument(std::string(what) + ": negative spin");
  if (!j.contains(twice_m)) {
    throw std::invalid_argument(std::string(what) + ": magnetic number " +
                                std::to_string(twice_m) + "/2 is not on the grid of spin " +
                                to_string(j));
  }
}

std::vector<Spin> spin_grid(int n) {
  if (n < 1) throw std::invalid_argument("spin_grid: n must be positive");
  std::vector<Spin> grid;
  for (int twice = n; twice >= 0; twice -= 2) grid.emplace_back(twice);
  return grid;
}

void check_on_grid(int n, Spin j) {
  if (j.twice < 0 || j.twice > n || (n - j.twice) % 2 != 0) {
    throw std::invalid_argument("spin " + to_string(j) + " is not on the total-spin grid of " +
                                std::to_string(n) + " qubits");
  }
}

}  // namespace clockpress
