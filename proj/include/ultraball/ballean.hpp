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

#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ultraball/error.hpp"
#include "ultraball/point_set.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/space.hpp"

namespace ultraball {

/// All distinct closed balls of a host space, sorted by (size, members).
class Ballean {
 public:
  Ballean(FiniteUltrametricSpace host, std::vector<Ball> balls)
      : host_(std::move(host)), balls_(std::move(balls)) {}

  const FiniteUltrametricSpace& host() const { return host_; }
  const std::vector<Ball>& balls() const { return balls_; }
  std::size_t size() const { return balls_.size(); }
  const Ball& operator[](std::size_t i) const { return balls_.at(i); }

  std::optional<std::size_t> index_of(const PointSet& members) const {
    auto it = std::lower_bound(balls_.begin(), balls_.end(), Ball{members, {}});
    if (it == balls_.end() || it->members != members) return std::nullopt;
    return static_cast<std::size_t>(it - balls_.begin());
  }

 private:
  FiniteUltrametricSpace host_;
  std::vector<Ball> balls_;
};

/// Every ball of a finite space is B(c, r) with r = 0 or r a distance realized
/// from c, so those radii suffice.
inline Ballean enumerate_ballean(const FiniteUltrametricSpace& space) {
  std::set<Ball> found;
  for (std::size_t c = 0; c < space.size(); ++c) {
    found.insert(closed_ball(space, c, Rational(0)));
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (x != c) found.insert(closed_ball(space, c, space.distance(c, x)));
    }
  }
  return Ballean(space, std::vector<Ball>(found.begin(), found.end()));
}

// ---------------------------------------------------------------------------
// Hausdorff distance

/// Two-sided sup-inf distance between arbitrary nonempty subsets.
inline Rational hausdorff_oracle(const FiniteUltrametricSpace& space,
                                 std::span<const std::size_t> a,
                                 std::span<const std::size_t> b) {
  detail::require_subset(space, a);
  detail::require_subset(space, b);
  auto one_sided = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
    Rational sup;
    for (std::size_t x : from) {
      Rational inf = space.distance(x, to.front());
      for (std::size_t y : to) inf = min(inf, space.distance(x, y));
      sup = max(sup, inf);
    }
    return sup;
  };
  return max(one_sided(a, b), one_sided(b, a));
}

/// Distance between disjoint sets: the infimum of pointwise distances.
inline Rational set_distance(const FiniteUltrametricSpace& space,
                             std::span<const std::size_t> a,
                             std::span<const std::size_t> b) {
  detail::require_subset(space, a);
  detail::require_subset(space, b);
  Rational best = space.distance(a.front(), b.front());
  for (std::size_t x : a) {
    for (std::size_t y : b) best = min(best, space.distance(x, y));
  }
  return best;
}

/// Piecewise form: dist(B1, B2) when disjoint, max of the diameters when the
/// balls meet.
inline Rational hausdorff_piecewise(const FiniteUltrametricSpace& space, const Ball& b1,
                                    const Ball& b2) {
  if (b1 == b2) return Rational(0);
  if (!intersects(b1.members, b2.members)) {
    return set_distance(space, b1.members, b2.members);
  }
  return max(b1.diameter, b2.diameter);
}

/// Diameter-of-union form.
inline Rational hausdorff_union(const FiniteUltrametricSpace& space, const Ball& b1,
                                const Ball& b2) {
  if (b1 == b2) return Rational(0);
  return diam(space, set_union(b1.members, b2.members));
}

struct HausdorffOptions {
  /// Evaluate the oracle and the piecewise form too, and throw
  /// InvariantViolation unless all three agree.
  bool verify = false;
};

/// True when ULTRABALL_DEBUG_ASSERT=1 is set in the environment.
inline bool verification_forced() {
  static const bool forced = [] {
    const char* v = std::getenv("ULTRABALL_DEBUG_ASSERT");
    return v != nullptr && std::string(v) == "1";
  }();
  return forced;
}

inline Rational hausdorff_balls(const FiniteUltrametricSpace& space, const Ball& b1,
                                const Ball& b2, HausdorffOptions options = {}) {
  if (!is_canonical_ball(space, b1) || !is_canonical_ball(space, b2)) {
    throw Error(ErrorKind::ForeignBall, "ball is not canonical in this space");
  }
  Rational value = hausdorff_union(space, b1, b2);
  if (options.verify || verification_forced()) {
    Rational oracle = hausdorff_oracle(space, b1.members, b2.members);
    Rational piecewise = hausdorff_piecewise(space, b1, b2);
    if (oracle != value || piecewise != value) {
      throw Error(ErrorKind::InvariantViolation,
                  "Hausdorff forms disagree: union " + value.to_string() + ", oracle " +
                      oracle.to_string() + ", piecewise " + piecewise.to_string());
    }
  }
  return value;
}

struct SmallestBallDistance {
  Ball ball;
  Rational distance;
};

/// Smallest ball containing B1 ∪ B2 and its diameter, which equals the
/// Hausdorff distance between the two distinct balls.
inline SmallestBallDistance smallest_ball_distance(const FiniteUltrametricSpace& space,
                                                   const Ball& b1, const Ball& b2,
                                                   HausdorffOptions options = {}) {
  if (!is_canonical_ball(space, b1) || !is_canonical_ball(space, b2)) {
    throw Error(ErrorKind::ForeignBall, "ball is not canonical in this space");
  }
  if (b1 == b2) throw Error(ErrorKind::EqualBalls, "balls must be distinct");
  Ball star = smallest_ball(space, set_union(b1.members, b2.members));
  Rational dh = hausdorff_balls(space, b1, b2, options);
  if (star.diameter != dh) {
    throw Error(ErrorKind::InvariantViolation,
                "smallest ball diameter " + star.diameter.to_string() +
                    " differs from Hausdorff distance " + dh.to_string());
  }
  return {std::move(star), std::move(dh)};
}

// ---------------------------------------------------------------------------
// Ballean as a metric space

namespace detail {
inline std::string member_token(const std::string& label) {
  if (label.find_first_of("+{}") == std::string::npos) return label;
  return "{" + label + "}";
}
}  // namespace detail

/// Label for a ball: member labels sorted and joined by '+'. Member labels
/// that themselves contain '+', '{' or '}' are wrapped in braces so labels of
/// iterated balleans stay unique.
inline std::string ball_label(const FiniteUltrametricSpace& space, const Ball& ball) {
  std::vector<std::string> tokens;
  for (std::size_t x : ball.members) tokens.push_back(detail::member_token(space.label(x)));
  std::sort(tokens.begin(), tokens.end());
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += '+';
    out += tokens[i];
  }
  return out;
}

/// Labels and Hausdorff matrix of the ballean, unvalidated.
inline std::pair<std::vector<std::string>, DistanceMatrix> ballean_matrix(
    const Ballean& ballean, HausdorffOptions options = {}) {
  const auto& space = ballean.host();
  const std::size_t m = ballean.size();
  std::vector<std::string> labels;
  labels.reserve(m);
  for (const Ball& b : ballean.balls()) labels.push_back(ball_label(space, b));
  DistanceMatrix dist(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      dist[i][j] = dist[j][i] = hausdorff_balls(space, ballean[i], ballean[j], options);
    }
  }
  return {std::move(labels), std::move(dist)};
}

/// The ballean under the Hausdorff metric, as a new finite ultrametric space.
/// The result goes through validate_ultrametric; a violation would contradict
/// ultrametricity of the ballean and throws InvariantViolation.
inline FiniteUltrametricSpace ballean_space(const FiniteUltrametricSpace& space,
                                            HausdorffOptions options = {}) {
  auto [labels, dist] = ballean_matrix(enumerate_ballean(space), options);
  auto result = validate_ultrametric(std::move(dist), std::move(labels));
  if (auto* v = std::get_if<Violation>(&result)) {
    throw Error(ErrorKind::InvariantViolation,
                "ballean failed " + std::string(to_string(v->axiom)));
  }
  return std::get<FiniteUltrametricSpace>(std::move(result));
}

inline constexpr std::size_t kDefaultMaxIterationDepth = 3;

/// Spaces X, B(X), B(B(X)), ... up to `depth` ballean applications; element 0
/// is the input.
inline std::vector<FiniteUltrametricSpace> iterated_ballean_spaces(
    const FiniteUltrametricSpace& space, std::size_t depth,
    std::size_t max_depth = kDefaultMaxIterationDepth, HausdorffOptions options = {}) {
  if (depth > max_depth) {
    throw Error(ErrorKind::BadParams, "iteration depth " + std::to_string(depth) +
                                          " exceeds cap " + std::to_string(max_depth));
  }
  std::vector<FiniteUltrametricSpace> levels{space};
  for (std::size_t k = 0; k < depth; ++k) {
    levels.push_back(ballean_space(levels.back(), options));
  }
  return levels;
}

// ---------------------------------------------------------------------------
// Families of balls

/// A nonempty set of balls of one host together with the union of their
/// members.
struct BallFamily {
  std::vector<Ball> balls;
  PointSet union_members;

  static BallFamily of(std::vector<Ball> balls) {
    BallFamily f;
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    if (balls.empty()) throw Error(ErrorKind::EmptySubset, "family must be nonempty");
    for (const Ball& b : balls) f.union_members = set_union(f.union_members, b.members);
    f.balls = std::move(balls);
    return f;
  }
};

struct FamilyDiameters {
  Rational family;       // diameter of the family under d_H
  Rational union_set;    // diameter of the union under d
  Rational smallest;     // diameter of the smallest ball holding the union
};

inline FamilyDiameters family_diameters(const FiniteUltrametricSpace& space,
                                        const BallFamily& family,
                                        HausdorffOptions options = {}) {
  if (family.balls.size() < 2) {
    throw Error(ErrorKind::FamilyTooSmall, "family needs at least two balls");
  }
  FamilyDiameters out;
  for (std::size_t i = 0; i < family.balls.size(); ++i) {
    for (std::size_t j = i + 1; j < family.balls.size(); ++j) {
      out.family = max(out.family,
                       hausdorff_balls(space, family.balls[i], family.balls[j], options));
    }
  }
  out.union_set = diam_pairwise(space, family.union_members);
  out.smallest = smallest_ball(space, family.union_members).diameter;
  if (out.family != out.union_set || out.union_set != out.smallest) {
    throw Error(ErrorKind::InvariantViolation,
                "family diameters differ: " + out.family.to_string() + ", " +
                    out.union_set.to_string() + ", " + out.smallest.to_string());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isolated balls and the singleton copy of X

/// Balls of positive diameter together with the singletons of isolated
/// points. This set-level form stands in for "balls with a positive-radius
/// presentation" and coincides with the isolated points of the ballean.
inline std::vector<Ball> b0_set(const FiniteUltrametricSpace& space) {
  Ballean ballean = enumerate_ballean(space);
  PointSet iso = isolated_points(space, all_points(space.size()));
  std::vector<Ball> out;
  for (const Ball& b : ballean.balls()) {
    bool keep = b.diameter.is_positive() ||
                (b.size() == 1 && std::binary_search(iso.begin(), iso.end(), b.members[0]));
    if (keep) out.push_back(b);
  }
  return out;
}

/// Same set as b0_set. Every point of a finite space is isolated, so this must
/// return the whole ballean; anything else throws InvariantViolation.
inline std::vector<Ball> iso_of_ballean(const FiniteUltrametricSpace& space) {
  auto out = b0_set(space);
  if (out != enumerate_ballean(space).balls()) {
    throw Error(ErrorKind::InvariantViolation, "finite ballean has a non-isolated ball");
  }
  return out;
}

/// x ↦ {x}, checked to be an isometry onto its image.
inline std::vector<Ball> singleton_embedding(const FiniteUltrametricSpace& space,
                                             HausdorffOptions options = {}) {
  std::vector<Ball> image;
  image.reserve(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) image.push_back(closed_ball(space, x, 0));
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (std::size_t y = 0; y < space.size(); ++y) {
      if (hausdorff_balls(space, image[x], image[y], options) != space.distance(x, y)) {
        throw Error(ErrorKind::InvariantViolation,
                    "singleton embedding is not an isometry at " + space.label(x) + ", " +
                        space.label(y));
      }
    }
  }
  return image;
}

/// All subsets of `space` that are dense and discrete, by exhaustive scan.
inline std::vector<PointSet> dense_discrete_subsets(const FiniteUltrametricSpace& space) {
  if (space.size() > 16) {
    throw Error(ErrorKind::BadParams, "exhaustive subset scan limited to 16 points");
  }
  std::vector<PointSet> out;
  const std::size_t n = space.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    PointSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    if (is_dense_subset(space, s) && is_discrete_subset(space, s)) out.push_back(s);
  }
  return out;
}

}  // namespace ultraball
