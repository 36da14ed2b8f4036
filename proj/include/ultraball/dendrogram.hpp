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
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultraball/ballean.hpp"
#include "ultraball/error.hpp"
#include "ultraball/point_set.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/space.hpp"

namespace ultraball {

struct DendrogramNode {
  Rational level;                     // 0 for leaves
  std::vector<std::size_t> children;  // node indices, empty for leaves
  std::optional<PointId> point;       // set exactly for leaves

  bool is_leaf() const { return point.has_value(); }
};

/// Rooted merge tree whose lowest-common-ancestor levels give an ultrametric.
/// Levels strictly decrease from the root; internal nodes have >= 2 children.
class Dendrogram {
 public:
  /// Checks the tree invariants and throws MalformedTree on failure.
  static Dendrogram from_nodes(std::vector<DendrogramNode> nodes, std::size_t root) {
    Dendrogram d;
    d.nodes_ = std::move(nodes);
    d.root_ = root;
    d.check();
    return d;
  }

  const std::vector<DendrogramNode>& nodes() const { return nodes_; }
  const DendrogramNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t root() const { return root_; }
  std::size_t leaf_count() const { return leaf_count_; }

  /// Point indices below node `i`, sorted.
  PointSet leaf_set(std::size_t i) const {
    PointSet out;
    collect(i, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<PointSet> all_leaf_sets() const {
    std::vector<PointSet> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) out.push_back(leaf_set(i));
    return out;
  }

 private:
  Dendrogram() = default;

  void collect(std::size_t i, PointSet& out) const {
    const auto& nd = nodes_[i];
    if (nd.is_leaf()) {
      out.push_back(nd.point->index);
      return;
    }
    for (std::size_t c : nd.children) collect(c, out);
  }

  void check() {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedTree, why); };
    if (root_ >= nodes_.size()) bad("root index out of range");
    std::vector<int> parents(nodes_.size(), 0);
    for (const auto& nd : nodes_) {
      if (nd.is_leaf()) {
        if (!nd.children.empty()) bad("leaf with children");
        if (!nd.level.is_zero()) bad("leaf with nonzero level");
        continue;
      }
      if (nd.children.size() < 2) bad("internal node with fewer than two children");
      if (!nd.level.is_positive()) bad("internal node level must be positive");
      for (std::size_t c : nd.children) {
        if (c >= nodes_.size()) bad("child index out of range");
        ++parents[c];
        const auto& child = nodes_[c];
        if (!child.is_leaf() && !(child.level < nd.level)) {
          bad("levels must strictly decrease toward the leaves");
        }
      }
    }
    if (parents[root_] != 0) bad("root has a parent");
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<std::size_t> stack{root_};
    std::vector<std::size_t> leaf_points;
    std::vector<std::string> labels;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      if (seen[i]) bad("node reachable twice");
      seen[i] = true;
      if (nodes_[i].is_leaf()) {
        leaf_points.push_back(nodes_[i].point->index);
        labels.push_back(nodes_[i].point->label);
      }
      for (std::size_t c : nodes_[i].children) {
        if (parents[c] != 1) bad("node with multiple parents");
        stack.push_back(c);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) bad("unreachable node");
    std::sort(leaf_points.begin(), leaf_points.end());
    for (std::size_t k = 0; k < leaf_points.size(); ++k) {
      if (leaf_points[k] != k) bad("leaf point indices must be 0..n-1");
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
      bad("duplicate leaf label");
    }
    leaf_count_ = leaf_points.size();
  }

  std::vector<DendrogramNode> nodes_;
  std::size_t root_ = 0;
  std::size_t leaf_count_ = 0;
};

namespace detail {
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::size_t min_leaf(const std::vector<DendrogramNode>& nodes, std::size_t i,
                            std::vector<std::size_t>& memo) {
  if (memo[i] != static_cast<std::size_t>(-1)) return memo[i];
  std::size_t best;
  if (nodes[i].is_leaf()) {
    best = nodes[i].point->index;
  } else {
    best = static_cast<std::size_t>(-1);
    for (std::size_t c : nodes[i].children) best = std::min(best, min_leaf(nodes, c, memo));
  }
  return memo[i] = best;
}
}  // namespace detail

/// Single-linkage merge over the distinct distances in ascending order. Leaves
/// occupy nodes 0..n-1 (node i is point i); children are ordered by their
/// smallest point index.
inline Dendrogram build_dendrogram(const FiniteUltrametricSpace& space) {
  const std::size_t n = space.size();
  std::vector<DendrogramNode> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({Rational(0), {}, space.point(i)});
  std::vector<std::size_t> cluster_node(n);
  std::iota(cluster_node.begin(), cluster_node.end(), std::size_t{0});
  detail::UnionFind uf(n);

  for (const Rational& level : space.distinct_distances()) {
    std::vector<std::size_t> before(n);
    for (std::size_t i = 0; i < n; ++i) before[i] = uf.find(i);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (space.distance(i, j) == level) uf.unite(i, j);
      }
    }
    // New root -> old roots merged into it.
    std::vector<std::vector<std::size_t>> merged(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (before[i] == i) merged[uf.find(i)].push_back(i);
    }
    std::vector<std::size_t> next_cluster_node = cluster_node;
    for (std::size_t r = 0; r < n; ++r) {
      if (merged[r].size() < 2) continue;
      DendrogramNode nd{level, {}, std::nullopt};
      for (std::size_t old_root : merged[r]) nd.children.push_back(cluster_node[old_root]);
      nodes.push_back(std::move(nd));
      next_cluster_node[r] = nodes.size() - 1;
    }
    cluster_node = std::move(next_cluster_node);
  }
  std::size_t root = cluster_node[uf.find(0)];

  std::vector<std::size_t> memo(nodes.size(), static_cast<std::size_t>(-1));
  for (auto& nd : nodes) {
    std::sort(nd.children.begin(), nd.children.end(), [&](std::size_t a, std::size_t b) {
      return detail::min_leaf(nodes, a, memo) < detail::min_leaf(nodes, b, memo);
    });
  }
  return Dendrogram::from_nodes(std::move(nodes), root);
}

/// Matrix of lowest-common-ancestor levels; points ordered by leaf index.
inline FiniteUltrametricSpace dendrogram_to_space(const Dendrogram& d) {
  const std::size_t n = d.leaf_count();
  std::vector<std::string> labels(n);
  DistanceMatrix dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const auto& nd = d.node(i);
    if (nd.is_leaf()) {
      labels[nd.point->index] = nd.point->label;
      continue;
    }
    std::vector<PointSet> kids;
    for (std::size_t c : nd.children) kids.push_back(d.leaf_set(c));
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        for (std::size_t x : kids[a]) {
          for (std::size_t y : kids[b]) dist[x][y] = dist[y][x] = nd.level;
        }
      }
    }
  }
  return make_space(std::move(dist), std::move(labels));
}

// ---------------------------------------------------------------------------
// Text form: a leaf is its label, an internal node is "(level child ...)".

inline std::string to_text(const Dendrogram& d, std::size_t node) {
  const auto& nd = d.node(node);
  if (nd.is_leaf()) return nd.point->label;
  std::string out = "(" + nd.level.to_string();
  for (std::size_t c : nd.children) out += " " + to_text(d, c);
  return out + ")";
}

inline std::string to_text(const Dendrogram& d) { return to_text(d, d.root()); }

/// Parses the text form. Leaves get point indices in order of appearance.
inline Dendrogram parse_dendrogram(std::string_view text) {
  std::vector<DendrogramNode> nodes;
  std::size_t pos = 0;
  std::size_t next_point = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto atom = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    if (start == pos) throw Error(ErrorKind::InvalidInput, "expected a token in dendrogram text");
    return std::string(text.substr(start, pos - start));
  };
  auto parse_node = [&](auto& self) -> std::size_t {
    skip_ws();
    if (pos >= text.size()) throw Error(ErrorKind::InvalidInput, "unexpected end of dendrogram text");
    if (text[pos] == ')') throw Error(ErrorKind::InvalidInput, "unexpected ')'");
    if (text[pos] != '(') {
      nodes.push_back({Rational(0), {}, PointId{next_point++, atom()}});
      return nodes.size() - 1;
    }
    ++pos;
    skip_ws();
    DendrogramNode nd{Rational::parse(atom()), {}, std::nullopt};
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw Error(ErrorKind::InvalidInput, "missing ')'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      nd.children.push_back(self(self));
    }
    nodes.push_back(std::move(nd));
    return nodes.size() - 1;
  };
  std::size_t root = parse_node(parse_node);
  skip_ws();
  if (pos != text.size()) throw Error(ErrorKind::InvalidInput, "trailing dendrogram text");
  return Dendrogram::from_nodes(std::move(nodes), root);
}

// ---------------------------------------------------------------------------
// Canonical code and isometry

/// Label-free code: leaves are "*", internal nodes "(level child-codes...)"
/// with child codes sorted. Equal codes iff the trees are isomorphic by a
/// level-preserving map that forgets labels.
inline std::string canonical_code(const Dendrogram& d, std::size_t node) {
  const auto& nd = d.node(node);
  if (nd.is_leaf()) return "*";
  std::vector<std::string> parts;
  for (std::size_t c : nd.children) parts.push_back(canonical_code(d, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(" + nd.level.to_string();
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

inline std::string canonical_code(const Dendrogram& d) { return canonical_code(d, d.root()); }

inline bool are_isometric(const FiniteUltrametricSpace& a, const FiniteUltrametricSpace& b) {
  if (a.size() != b.size()) return false;
  return canonical_code(build_dendrogram(a)) == canonical_code(build_dendrogram(b));
}

/// Checks that node leaf-sets and ballean member sets coincide.
inline bool nodes_match_ballean(const FiniteUltrametricSpace& space) {
  auto sets = build_dendrogram(space).all_leaf_sets();
  std::sort(sets.begin(), sets.end());
  std::vector<PointSet> balls;
  Ballean ballean = enumerate_ballean(space);
  for (const Ball& b : ballean.balls()) balls.push_back(b.members);
  std::sort(balls.begin(), balls.end());
  return sets == balls;
}

}  // namespace ultraball
