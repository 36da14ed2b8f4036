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

// Brute-force reference implementations used only by the tests.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "ultraball/dlps.hpp"
#include "ultraball/space.hpp"

namespace oracle {

using ultraball::DistanceMatrix;
using ultraball::FiniteUltrametricSpace;
using ultraball::Rational;

// Tries every bijection.
inline bool isometric_by_permutation(const FiniteUltrametricSpace& a,
                                     const FiniteUltrametricSpace& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < a.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < a.size(); ++j) {
        ok = a.distance(i, j) == b.distance(perm[i], perm[j]);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// max(sup_a inf_b d, sup_b inf_a d) straight off the matrix.
inline Rational hausdorff(const DistanceMatrix& d, const std::vector<std::size_t>& a,
                          const std::vector<std::size_t>& b) {
  auto directed = [&](const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
    Rational sup(0);
    for (std::size_t x : p) {
      Rational inf = d[x][q.front()];
      for (std::size_t y : q) inf = std::min(inf, d[x][y]);
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline Rational diameter(const DistanceMatrix& d, const std::vector<std::size_t>& a) {
  Rational out(0);
  for (std::size_t x : a) {
    for (std::size_t y : a) out = std::max(out, d[x][y]);
  }
  return out;
}

// Every {y : d(c, y) <= r} for every center and every matrix entry as radius.
inline std::set<std::vector<std::size_t>> all_balls(const DistanceMatrix& d) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < d.size(); ++c) {
    for (const auto& row : d) {
      for (const Rational& r : row) {
        std::vector<std::size_t> ball;
        for (std::size_t y = 0; y < d.size(); ++y) {
          if (d[c][y] <= r) ball.push_back(y);
        }
        out.insert(ball);
      }
    }
  }
  return out;
}

// First `depth` terms of each tail.
inline bool tails_share_a_term(const ultraball::GeometricTail& s,
                               const ultraball::GeometricTail& t, int depth = 64) {
  std::set<Rational> seen;
  Rational v = s.first;
  for (int k = 0; k < depth; ++k, v *= s.ratio) seen.insert(v);
  v = t.first;
  for (int k = 0; k < depth; ++k, v *= t.ratio) {
    if (seen.count(v)) return true;
  }
  return false;
}

// inf{max(x, y) : x != y} over an explicit finite set.
inline std::optional<Rational> pairwise_infimum(const std::vector<Rational>& xs) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      Rational v = std::max(xs[i], xs[j]);
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

}  // namespace oracle
