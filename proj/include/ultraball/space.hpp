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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ultraball/error.hpp"
#include "ultraball/point_set.hpp"
#include "ultraball/rational.hpp"

namespace ultraball {

using DistanceMatrix = std::vector<std::vector<Rational>>;

struct PointId {
  std::size_t index = 0;
  std::string label;

  friend bool operator==(const PointId&, const PointId&) = default;
};

enum class Axiom {
  NegativeEntry,
  NonzeroDiagonal,
  ZeroOffDiagonal,
  AsymmetricEntry,
  StrongTriangleViolation,
};

inline std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::NegativeEntry: return "NegativeEntry";
    case Axiom::NonzeroDiagonal: return "NonzeroDiagonal";
    case Axiom::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case Axiom::AsymmetricEntry: return "AsymmetricEntry";
    case Axiom::StrongTriangleViolation: return "StrongTriangleViolation";
  }
  return "Unknown";
}

/// A failed axiom with its witness indices. For StrongTriangleViolation the
/// witness (i, j, k) satisfies d(i, j) > max(d(i, k), d(k, j)).
struct Violation {
  Axiom axiom;
  std::vector<std::size_t> witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class FiniteUltrametricSpace;
using Validation = std::variant<FiniteUltrametricSpace, Violation>;

Validation validate_ultrametric(DistanceMatrix matrix,
                                std::vector<std::string> labels);

/// Finite ultrametric space with exact rational distances. Instances only come
/// out of `validate_ultrametric`, so every value satisfies the axioms.
class FiniteUltrametricSpace {
 public:
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const DistanceMatrix& matrix() const { return dist_; }
  const Rational& distance(std::size_t i, std::size_t j) const {
    return dist_[i][j];
  }

  PointId point(std::size_t i) const { return {i, labels_.at(i)}; }
  std::vector<PointId> points() const {
    std::vector<PointId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
  }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Sorted distinct positive distance values.
  std::vector<Rational> distinct_distances() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) out.push_back(dist_[i][j]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// All distinct pairs at one common distance; vacuously true for one point.
  bool is_equidistant() const { return distinct_distances().size() <= 1; }

  /// Subspace on `subset`, keeping labels and relative order.
  FiniteUltrametricSpace restricted(std::span<const std::size_t> subset) const {
    FiniteUltrametricSpace out;
    for (std::size_t i : subset) out.labels_.push_back(labels_.at(i));
    out.dist_.assign(subset.size(), std::vector<Rational>(subset.size()));
    for (std::size_t a = 0; a < subset.size(); ++a) {
      for (std::size_t b = 0; b < subset.size(); ++b) {
        out.dist_[a][b] = dist_[subset[a]][subset[b]];
      }
    }
    out.build_index();
    return out;
  }

  friend bool operator==(const FiniteUltrametricSpace& a,
                         const FiniteUltrametricSpace& b) {
    return a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  friend Validation validate_ultrametric(DistanceMatrix, std::vector<std::string>);

  FiniteUltrametricSpace() = default;

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
  }

  std::vector<std::string> labels_;
  DistanceMatrix dist_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Checks the metric and strong-triangle axioms. Structural problems (empty or
/// non-square matrix, label count mismatch, duplicate labels) throw
/// Error(InvalidInput). Entry checks run in row-major order before any triangle
/// check, and triangles are scanned over (i < j, k) lexicographically, so the
/// reported witness is always the first one in that order.
inline Validation validate_ultrametric(DistanceMatrix matrix,
                                       std::vector<std::string> labels) {
  const std::size_t n = matrix.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "space must have at least one point");
  for (const auto& row : matrix) {
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "matrix is not square");
  }
  if (labels.size() != n) {
    throw Error(ErrorKind::InvalidInput, "label count does not match matrix size");
  }
  {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorKind::InvalidInput, "duplicate point label");
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = matrix[i][j];
      if (i == j) {
        if (!v.is_zero()) return Violation{Axiom::NonzeroDiagonal, {i}};
        continue;
      }
      if (v.sign() < 0) return Violation{Axiom::NegativeEntry, {i, j}};
      if (v.is_zero()) return Violation{Axiom::ZeroOffDiagonal, {i, j}};
      if (v != matrix[j][i]) {
        return Violation{Axiom::AsymmetricEntry, {std::min(i, j), std::max(i, j)}};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (matrix[i][j] > max(matrix[i][k], matrix[k][j])) {
          return Violation{Axiom::StrongTriangleViolation, {i, j, k}};
        }
      }
    }
  }

  FiniteUltrametricSpace space;
  space.labels_ = std::move(labels);
  space.dist_ = std::move(matrix);
  space.build_index();
  return space;
}

/// Validates or throws Error(InvalidInput) naming the violated axiom.
inline FiniteUltrametricSpace make_space(DistanceMatrix matrix,
                                         std::vector<std::string> labels) {
  std::vector<std::string> names = labels;
  auto result = validate_ultrametric(std::move(matrix), std::move(labels));
  if (auto* v = std::get_if<Violation>(&result)) {
    std::string msg(to_string(v->axiom));
    for (std::size_t w : v->witness) msg += " " + names.at(w);
    throw Error(ErrorKind::InvalidInput, msg);
  }
  return std::get<FiniteUltrametricSpace>(std::move(result));
}

/// Canonical closed ball: its member set and its diameter, which is the least
/// radius presenting it.
struct Ball {
  PointSet members;
  Rational diameter;

  std::size_t size() const { return members.size(); }
  bool contains(std::size_t x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }

  friend bool operator==(const Ball& a, const Ball& b) { return a.members == b.members; }
  /// Ordered by size, then by member indices.
  friend bool operator<(const Ball& a, const Ball& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  }
};

namespace detail {
inline void require_subset(const FiniteUltrametricSpace& space,
                           std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "subset must be nonempty");
  for (std::size_t x : subset) {
    if (x >= space.size()) throw Error(ErrorKind::InvalidInput, "point index out of range");
  }
}
}  // namespace detail

/// Diameter as the largest distance to one fixed member; valid in any
/// ultrametric space.
inline Rational diam(const FiniteUltrametricSpace& space,
                     std::span<const std::size_t> subset) {
  detail::require_subset(space, subset);
  Rational best;
  const std::size_t p0 = subset.front();
  for (std::size_t x : subset) best = max(best, space.distance(p0, x));
  return best;
}

/// Diameter as the maximum over all pairs.
inline Rational diam_pairwise(const FiniteUltrametricSpace& space,
                              std::span<const std::size_t> subset) {
  detail::require_subset(space, subset);
  Rational best;
  for (std::size_t a : subset) {
    for (std::size_t b : subset) best = max(best, space.distance(a, b));
  }
  return best;
}

inline Ball closed_ball(const FiniteUltrametricSpace& space, std::size_t center,
                        const Rational& radius) {
  if (center >= space.size()) {
    throw Error(ErrorKind::InvalidInput, "ball center out of range");
  }
  if (radius.sign() < 0) throw Error(ErrorKind::NegativeRadius, "radius must be >= 0");
  Ball ball;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (space.distance(center, x) <= radius) ball.members.push_back(x);
  }
  ball.diameter = diam(space, ball.members);
  return ball;
}

inline Ball smallest_ball(const FiniteUltrametricSpace& space,
                          std::span<const std::size_t> subset) {
  return closed_ball(space, subset.empty() ? 0 : subset.front(), diam(space, subset));
}

/// True when `ball` is a closed ball of `space` in canonical form.
inline bool is_canonical_ball(const FiniteUltrametricSpace& space, const Ball& ball) {
  if (ball.members.empty() || !is_normalized(ball.members)) return false;
  if (ball.members.back() >= space.size()) return false;
  if (ball.diameter != diam(space, ball.members)) return false;
  return closed_ball(space, ball.members.front(), ball.diameter).members == ball.members;
}

/// Turns a member set into the canonical ball it denotes, or throws
/// ForeignBall when the set is not a closed ball of `space`.
inline Ball ball_from_members(const FiniteUltrametricSpace& space, PointSet members) {
  members = normalized(std::move(members));
  if (members.empty()) throw Error(ErrorKind::EmptySubset, "ball must be nonempty");
  if (members.back() >= space.size()) {
    throw Error(ErrorKind::ForeignBall, "ball member out of range");
  }
  Ball ball{std::move(members), {}};
  ball.diameter = diam(space, ball.members);
  if (!is_canonical_ball(space, ball)) {
    throw Error(ErrorKind::ForeignBall, "member set is not a closed ball");
  }
  return ball;
}

enum class BallRelation { Equal, ProperSubset, ProperSuperset, Disjoint };

inline std::string_view to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Equal: return "Equal";
    case BallRelation::ProperSubset: return "ProperSubset";
    case BallRelation::ProperSuperset: return "ProperSuperset";
    case BallRelation::Disjoint: return "Disjoint";
  }
  return "Unknown";
}

/// Relation of `first` to `second`. Intersecting balls are always nested, so a
/// partial overlap signals a broken invariant and throws InvariantViolation.
inline BallRelation ball_relation(const FiniteUltrametricSpace& space, const Ball& first,
                                  const Ball& second) {
  if (!is_canonical_ball(space, first) || !is_canonical_ball(space, second)) {
    throw Error(ErrorKind::ForeignBall, "ball is not canonical in this space");
  }
  if (first.members == second.members) return BallRelation::Equal;
  if (!intersects(first.members, second.members)) return BallRelation::Disjoint;
  if (contains_all(second.members, first.members)) return BallRelation::ProperSubset;
  if (contains_all(first.members, second.members)) return BallRelation::ProperSuperset;
  throw Error(ErrorKind::InvariantViolation, "closed balls overlap without nesting");
}

// Isolated and accumulation points of a subset S of a finite space Y,
// evaluated from their ball definitions with an explicit witness radius.

/// iso_Y(S): members s of S with S ∩ B_r(s) = {s} for some r > 0.
inline PointSet isolated_points(const FiniteUltrametricSpace& space,
                                std::span<const std::size_t> subset) {
  PointSet out;
  for (std::size_t s : subset) {
    std::optional<Rational> nearest;
    for (std::size_t t : subset) {
      if (t == s) continue;
      const Rational& d = space.distance(s, t);
      if (!nearest || d < *nearest) nearest = d;
    }
    Rational r = nearest ? *nearest / Rational(2) : Rational(1);
    if (!r.is_positive()) continue;
    auto ball = closed_ball(space, s, r).members;
    if (set_intersection(ball, subset) == PointSet{s}) out.push_back(s);
  }
  return out;
}

/// acc_Y(S): points c of Y such that every B_r(c), r > 0, meets S \ {c}.
/// In a finite metric space the radius just below the nearest other member of
/// S separates, so the result is always empty; it is computed, not assumed.
inline PointSet accumulation_points(const FiniteUltrametricSpace& space,
                                    std::span<const std::size_t> subset) {
  PointSet out;
  for (std::size_t c = 0; c < space.size(); ++c) {
    std::optional<Rational> nearest;
    for (std::size_t s : subset) {
      if (s == c) continue;
      const Rational& d = space.distance(c, s);
      if (!nearest || d < *nearest) nearest = d;
    }
    if (!nearest) continue;
    Rational r = *nearest / Rational(2);
    if (!r.is_positive()) {
      out.push_back(c);
      continue;
    }
    auto ball = closed_ball(space, c, r).members;
    bool meets = false;
    for (std::size_t s : set_intersection(ball, subset)) meets = meets || s != c;
    if (meets) out.push_back(c);
  }
  return out;
}

/// S is dense when every point of Y is at distance zero (infimum) from S.
inline bool is_dense_subset(const FiniteUltrametricSpace& space,
                            std::span<const std::size_t> subset) {
  if (subset.empty()) return false;
  for (std::size_t y = 0; y < space.size(); ++y) {
    Rational best = space.distance(y, subset.front());
    for (std::size_t s : subset) best = min(best, space.distance(y, s));
    if (!best.is_zero()) return false;
  }
  return true;
}

inline bool is_discrete_subset(const FiniteUltrametricSpace& space,
                               std::span<const std::size_t> subset) {
  PointSet s(subset.begin(), subset.end());
  return isolated_points(space, subset) == s;
}

/// Smallest positive distance, or nullopt for a one-point space.
inline std::optional<Rational> min_positive_distance(const FiniteUltrametricSpace& space) {
  auto values = space.distinct_distances();
  if (values.empty()) return std::nullopt;
  return values.front();
}

}  // namespace ultraball
