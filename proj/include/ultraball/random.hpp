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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ultraball/dendrogram.hpp"
#include "ultraball/error.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/space.hpp"

namespace ultraball {

/// Seeded stream. mt19937_64 output is fixed by the standard; bounded draws
/// use rejection sampling rather than std distributions, whose algorithms are
/// implementation-defined, so streams replay identically on every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorKind::BadParams, "empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for trial `index` of a run with `master` seed (SplitMix64 finalizer).
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::vector<Rational> default_level_pool() {
  return {Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(7, 2), Rational(4)};
}

inline std::string point_label(std::size_t i) { return "p" + std::to_string(i); }

namespace detail {
class TreeGrower {
 public:
  TreeGrower(Rng& rng, std::vector<Rational> levels, bool binary)
      : rng_(rng), levels_(std::move(levels)), binary_(binary) {}

  /// Grows a subtree over `points` using only levels_[0 .. available).
  std::size_t grow(std::vector<std::size_t> points, std::size_t available) {
    if (points.size() == 1) {
      nodes.push_back({Rational(0), {}, PointId{points[0], point_label(points[0])}});
      return nodes.size() - 1;
    }
    std::size_t pick = rng_.below(available);
    DendrogramNode nd{levels_[pick], {}, std::nullopt};
    std::vector<std::vector<std::size_t>> blocks;
    if (pick == 0) {
      for (std::size_t p : points) blocks.push_back({p});
    } else {
      std::size_t k = binary_ ? 2 : rng_.between(2, points.size());
      rng_.shuffle(points);
      blocks.resize(k);
      for (std::size_t i = 0; i < points.size(); ++i) {
        blocks[i < k ? i : rng_.below(k)].push_back(points[i]);
      }
    }
    for (auto& block : blocks) nd.children.push_back(grow(std::move(block), pick));
    nodes.push_back(std::move(nd));
    return nodes.size() - 1;
  }

  std::vector<DendrogramNode> nodes;

 private:
  Rng& rng_;
  std::vector<Rational> levels_;
  bool binary_;
};

inline std::vector<Rational> checked_pool(std::vector<Rational> pool) {
  if (pool.empty()) throw Error(ErrorKind::BadParams, "level pool is empty");
  for (const auto& v : pool) {
    if (!v.is_positive()) throw Error(ErrorKind::BadParams, "levels must be positive");
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}
}  // namespace detail

/// Random space from a random merge tree: leaf sets are split recursively at
/// random, and each split takes a pool level strictly below its parent's.
inline FiniteUltrametricSpace random_space(std::uint64_t seed, std::size_t n,
                                           std::vector<Rational> level_pool) {
  if (n == 0) throw Error(ErrorKind::BadParams, "n must be >= 1");
  auto pool = detail::checked_pool(std::move(level_pool));
  Rng rng(seed);
  detail::TreeGrower grower(rng, pool, false);
  std::size_t root = grower.grow(all_points(n), pool.size());
  return dendrogram_to_space(Dendrogram::from_nodes(std::move(grower.nodes), root));
}

/// Random binary merge tree with all n-1 merge levels distinct (levels
/// 1..n-1, assigned top-down in random order). Its ballean has exactly 2n-1
/// balls.
inline FiniteUltrametricSpace random_binary_space(std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BadParams, "n must be >= 1");
  Rng rng(seed);
  std::vector<DendrogramNode> nodes;
  struct Pending {
    std::vector<std::size_t> points;
    std::size_t node;
  };
  // Topology first, then levels along a random parent-before-child order.
  std::vector<Pending> frontier;
  nodes.push_back({});
  frontier.push_back({all_points(n), 0});
  std::int64_t next_level = static_cast<std::int64_t>(n) - 1;
  while (!frontier.empty()) {
    std::size_t pick = rng.below(frontier.size());
    Pending cur = std::move(frontier[pick]);
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
    if (cur.points.size() == 1) {
      nodes[cur.node] = {Rational(0), {}, PointId{cur.points[0], point_label(cur.points[0])}};
      continue;
    }
    nodes[cur.node].level = Rational(next_level--);
    rng.shuffle(cur.points);
    std::size_t cut = rng.between(1, cur.points.size() - 1);
    for (auto part : {std::vector<std::size_t>(cur.points.begin(), cur.points.begin() + cut),
                      std::vector<std::size_t>(cur.points.begin() + cut, cur.points.end())}) {
      nodes.push_back({});
      nodes[cur.node].children.push_back(nodes.size() - 1);
      frontier.push_back({std::move(part), nodes.size() - 1});
    }
  }
  return dendrogram_to_space(Dendrogram::from_nodes(std::move(nodes), 0));
}

/// n points at mutual distance t.
inline FiniteUltrametricSpace equidistant_space(std::size_t n, const Rational& t) {
  if (n == 0) throw Error(ErrorKind::BadParams, "n must be >= 1");
  if (!t.is_positive()) throw Error(ErrorKind::BadParams, "distance must be positive");
  DistanceMatrix dist(n, std::vector<Rational>(n, t));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i][i] = Rational(0);
    labels.push_back(point_label(i));
  }
  return make_space(std::move(dist), std::move(labels));
}

}  // namespace ultraball
