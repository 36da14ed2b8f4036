// Copyright 2026 The Ultraball Authors
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

#include <initializer_list>
#include <string>
#include <vector>

#include "ultraball/random.hpp"
#include "ultraball/space.hpp"

namespace fixtures {

using ultraball::DistanceMatrix;
using ultraball::Rational;

inline DistanceMatrix ints(std::initializer_list<std::initializer_list<int>> rows) {
  DistanceMatrix m;
  for (auto row : rows) {
    m.emplace_back();
    for (int v : row) m.back().push_back(Rational(v));
  }
  return m;
}

// d(a,b) = 1, d(a,c) = d(b,c) = 2.
inline ultraball::FiniteUltrametricSpace three_points() {
  return ultraball::make_space(ints({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), {"a", "b", "c"});
}

// Spaces of every size up to `max_n`, `per_size` each, from the default pool.
inline std::vector<ultraball::FiniteUltrametricSpace> random_spaces(std::uint64_t seed,
                                                                    std::size_t max_n,
                                                                    std::size_t per_size) {
  std::vector<ultraball::FiniteUltrametricSpace> out;
  ultraball::Rng rng(seed);
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (std::size_t k = 0; k < per_size; ++k) {
      out.push_back(ultraball::random_space(rng.next(), n, ultraball::default_level_pool()));
    }
  }
  return out;
}

}  // namespace fixtures
