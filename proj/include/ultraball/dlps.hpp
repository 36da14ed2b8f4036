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
#include <optional>
#include <string>
#include <vector>

#include "ultraball/error.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/space.hpp"

// Subsets of the nonnegative rationals under d+(x, y) = max(x, y) for x != y,
// presented as finitely many positive points, an optional 0 and finitely many
// geometric tails first * ratio^k (k >= 0) converging to 0.

namespace ultraball {

inline Rational dlps_distance(const Rational& x, const Rational& y) {
  if (x.sign() < 0 || y.sign() < 0) {
    throw Error(ErrorKind::NegativeInput, "d+ is defined on nonnegative numbers");
  }
  if (x == y) return Rational(0);
  return max(x, y);
}

struct GeometricTail {
  Rational first;
  Rational ratio;

  /// Terms strictly decrease toward 0, so the scan stops once past `x`.
  bool contains(const Rational& x) const {
    if (!x.is_positive()) return false;
    for (Rational v = first; v >= x; v *= ratio) {
      if (v == x) return true;
    }
    return false;
  }

  /// Largest term <= r, if any.
  std::optional<Rational> largest_at_most(const Rational& r) const {
    if (!r.is_positive()) return std::nullopt;
    Rational v = first;
    while (v > r) v *= ratio;
    return v;
  }

  friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

namespace detail {

/// Pairwise coprime integers > 1 generating every input multiplicatively
/// (factor refinement by repeated gcd splitting).
inline std::vector<BigInt> coprime_basis(std::vector<BigInt> values) {
  std::vector<BigInt> basis;
  for (auto& v : values) {
    if (v > 1) basis.push_back(v);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        BigInt g = boost::multiprecision::gcd(basis[i], basis[j]);
        if (g == 1) continue;
        BigInt a = basis[i] / g;
        BigInt b = basis[j] / g;
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        for (BigInt* x : {&g, &a, &b}) {
          if (*x > 1) basis.push_back(*x);
        }
        changed = true;
      }
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

inline std::vector<BigInt> valuations(const Rational& r, const std::vector<BigInt>& basis) {
  auto count = [&](BigInt n, std::vector<BigInt>& out, int sign) {
    for (std::size_t e = 0; e < basis.size(); ++e) {
      while (n % basis[e] == 0) {
        n /= basis[e];
        out[e] += sign;
      }
    }
    if (n != 1) throw Error(ErrorKind::InvariantViolation, "basis does not generate value");
  };
  std::vector<BigInt> out(basis.size());
  count(r.numerator(), out, 1);
  count(r.denominator(), out, -1);
  return out;
}

}  // namespace detail

/// True when the two tails share a term. Writing every value over a common
/// coprime basis turns f1 q1^k = f2 q2^m into a linear system in (k, m) over
/// the exponent vectors, solved exactly.
inline bool tails_intersect(const GeometricTail& s, const GeometricTail& t) {
  auto basis = detail::coprime_basis({s.first.numerator(), s.first.denominator(),
                                      s.ratio.numerator(), s.ratio.denominator(),
                                      t.first.numerator(), t.first.denominator(),
                                      t.ratio.numerator(), t.ratio.denominator()});
  auto a = detail::valuations(s.first, basis);
  auto b = detail::valuations(s.ratio, basis);
  auto c = detail::valuations(t.first, basis);
  auto d = detail::valuations(t.ratio, basis);
  const std::size_t dim = basis.size();
  std::vector<BigInt> rhs(dim);
  for (std::size_t e = 0; e < dim; ++e) rhs[e] = c[e] - a[e];  // k b - m d = rhs

  auto satisfies = [&](const BigInt& k, const BigInt& m) {
    for (std::size_t e = 0; e < dim; ++e) {
      if (k * b[e] - m * d[e] != rhs[e]) return false;
    }
    return true;
  };

  for (std::size_t e1 = 0; e1 < dim; ++e1) {
    for (std::size_t e2 = e1 + 1; e2 < dim; ++e2) {
      BigInt det = -b[e1] * d[e2] + d[e1] * b[e2];
      if (det == 0) continue;
      BigInt k_num = -rhs[e1] * d[e2] + d[e1] * rhs[e2];
      BigInt m_num = b[e1] * rhs[e2] - b[e2] * rhs[e1];
      if (k_num % det != 0 || m_num % det != 0) return false;
      BigInt k = k_num / det;
      BigInt m = m_num / det;
      return k >= 0 && m >= 0 && satisfies(k, m);
    }
  }

  // d = lambda * b with lambda > 0 (both ratios lie in (0, 1)).
  std::size_t e0 = 0;
  while (e0 < dim && b[e0] == 0) ++e0;
  if (e0 == dim) throw Error(ErrorKind::InvariantViolation, "ratio of 1 in a tail");
  for (std::size_t e = 0; e < dim; ++e) {
    if (rhs[e] * b[e0] != rhs[e0] * b[e]) return false;
  }
  // k - lambda m = mu, lambda = P/Q, mu = rhs[e0]/b[e0]; integer solutions
  // exist iff mu*Q is an integer, and then arbitrarily large ones do too.
  Rational lambda(d[e0], b[e0]);
  Rational mu(rhs[e0], b[e0]);
  Rational scaled = mu * Rational(lambda.denominator(), BigInt(1));
  return scaled.denominator() == 1;
}

class DlpsSpace {
 public:
  /// Throws InvalidPresentation for an empty set, a non-positive finite point,
  /// a tail with first <= 0 or ratio outside (0, 1), or any overlap between
  /// tails and points.
  static DlpsSpace create(std::vector<Rational> finite_points, bool has_zero,
                          std::vector<GeometricTail> tails) {
    auto bad = [](const std::string& why) { throw Error(ErrorKind::InvalidPresentation, why); };
    std::sort(finite_points.begin(), finite_points.end());
    if (std::adjacent_find(finite_points.begin(), finite_points.end()) != finite_points.end()) {
      bad("duplicate finite point");
    }
    for (const auto& p : finite_points) {
      if (!p.is_positive()) bad("finite points must be positive; use the zero flag for 0");
    }
    for (const auto& t : tails) {
      if (!t.first.is_positive()) bad("tail first term must be positive");
      if (!t.ratio.is_positive() || !(t.ratio < Rational(1))) bad("tail ratio must lie in (0, 1)");
    }
    for (std::size_t i = 0; i < tails.size(); ++i) {
      for (const auto& p : finite_points) {
        if (tails[i].contains(p)) bad("finite point " + p.to_string() + " lies on a tail");
      }
      for (std::size_t j = i + 1; j < tails.size(); ++j) {
        if (tails_intersect(tails[i], tails[j])) bad("tails overlap");
      }
    }
    if (finite_points.empty() && !has_zero && tails.empty()) bad("presented set is empty");
    DlpsSpace x;
    x.finite_points_ = std::move(finite_points);
    x.has_zero_ = has_zero;
    x.tails_ = std::move(tails);
    return x;
  }

  const std::vector<Rational>& finite_points() const { return finite_points_; }
  bool has_zero() const { return has_zero_; }
  const std::vector<GeometricTail>& tails() const { return tails_; }
  bool is_finite() const { return tails_.empty(); }

  bool contains(const Rational& x) const {
    if (x.is_zero()) return has_zero_;
    if (x.sign() < 0) return false;
    if (std::binary_search(finite_points_.begin(), finite_points_.end(), x)) return true;
    return std::any_of(tails_.begin(), tails_.end(),
                       [&](const GeometricTail& t) { return t.contains(x); });
  }

  /// Largest element of X ∩ [0, r], if any.
  std::optional<Rational> max_at_most(const Rational& r) const {
    std::optional<Rational> best;
    if (has_zero_ && r.sign() >= 0) best = Rational(0);
    auto it = std::upper_bound(finite_points_.begin(), finite_points_.end(), r);
    if (it != finite_points_.begin()) best = best ? max(*best, *std::prev(it)) : *std::prev(it);
    for (const auto& t : tails_) {
      if (auto v = t.largest_at_most(r)) best = best ? max(*best, *v) : *v;
    }
    return best;
  }

  /// Whether X ∩ [0, r] has at least two elements.
  bool has_two_at_most(const Rational& r) const {
    if (r.is_positive() && !tails_.empty()) return true;
    std::size_t count = has_zero_ && r.sign() >= 0 ? 1 : 0;
    count += static_cast<std::size_t>(
        std::upper_bound(finite_points_.begin(), finite_points_.end(), r) -
        finite_points_.begin());
    return count >= 2;
  }

  /// Every element, for finite presentations; ascending.
  std::vector<Rational> elements() const {
    if (!is_finite()) throw Error(ErrorKind::BadParams, "presented set is infinite");
    std::vector<Rational> out;
    if (has_zero_) out.push_back(Rational(0));
    out.insert(out.end(), finite_points_.begin(), finite_points_.end());
    return out;
  }

 private:
  DlpsSpace() = default;

  std::vector<Rational> finite_points_;
  bool has_zero_ = false;
  std::vector<GeometricTail> tails_;
};

/// A ball of a DLPS space: a singleton {value}, or X ∩ [0, cutoff] with the
/// cutoff normalized to the largest element it traps. A truncation that traps a
/// single element is stored as that singleton, so equality is set equality.
struct SymbolicBall {
  enum class Kind { Singleton, Truncation };
  Kind kind = Kind::Singleton;
  Rational value;

  static SymbolicBall singleton(Rational v) { return {Kind::Singleton, std::move(v)}; }

  /// Largest element of the ball.
  const Rational& max_element() const { return value; }

  std::string to_string() const {
    return kind == Kind::Singleton ? "{" + value.to_string() + "}"
                                   : "[0, " + value.to_string() + "]";
  }

  friend bool operator==(const SymbolicBall&, const SymbolicBall&) = default;
};

/// Normalized X ∩ [0, r]; r must trap at least one element.
inline SymbolicBall dlps_truncation(const DlpsSpace& x, const Rational& r) {
  auto top = x.max_at_most(r);
  if (!top) throw Error(ErrorKind::BadParams, "truncation traps no element");
  if (!x.has_two_at_most(*top)) return SymbolicBall::singleton(*top);
  return {SymbolicBall::Kind::Truncation, *top};
}

inline SymbolicBall dlps_ball(const DlpsSpace& x, const Rational& center, const Rational& r) {
  if (!x.contains(center)) throw Error(ErrorKind::CenterNotInSpace, center.to_string());
  if (r.sign() < 0) throw Error(ErrorKind::NegativeRadius, "radius must be >= 0");
  if (center.is_positive() && r < center) return SymbolicBall::singleton(center);
  return dlps_truncation(x, r);
}

inline bool is_ball_of(const DlpsSpace& x, const SymbolicBall& b) {
  if (!x.contains(b.value)) return false;
  if (b.kind == SymbolicBall::Kind::Singleton) return true;
  return x.has_two_at_most(b.value);
}

inline bool ball_contains(const DlpsSpace& x, const SymbolicBall& b, const Rational& v) {
  if (b.kind == SymbolicBall::Kind::Singleton) return v == b.value;
  return x.contains(v) && v <= b.value;
}

/// Diameter of the union; for two distinct balls the union has at least two
/// elements, and its diameter is its largest element.
inline Rational dlps_hausdorff(const DlpsSpace& x, const SymbolicBall& b1,
                               const SymbolicBall& b2) {
  if (!is_ball_of(x, b1) || !is_ball_of(x, b2)) {
    throw Error(ErrorKind::ForeignBall, "not a ball of this space");
  }
  if (b1 == b2) return Rational(0);
  return max(b1.max_element(), b2.max_element());
}

/// All balls of a finite presentation.
inline std::vector<SymbolicBall> dlps_ballean(const DlpsSpace& x) {
  std::vector<SymbolicBall> out;
  for (const auto& v : x.elements()) out.push_back(SymbolicBall::singleton(v));
  for (const auto& v : x.elements()) {
    if (x.has_two_at_most(v)) out.push_back({SymbolicBall::Kind::Truncation, v});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point-space predicates

/// acc(X): 0 when 0 ∈ X and some tail converges to it; nothing else can
/// accumulate because d+(c, x) >= c for every x != c.
inline std::vector<Rational> dlps_acc(const DlpsSpace& x) {
  if (x.has_zero() && !x.tails().empty()) return {Rational(0)};
  return {};
}

/// iso(X) = X \ acc(X), answered by membership.
struct DlpsIsolated {
  DlpsSpace space;
  bool zero_excluded = false;

  bool contains(const Rational& v) const {
    if (v.is_zero() && zero_excluded) return false;
    return space.contains(v);
  }
  std::string describe() const { return zero_excluded ? "X \\ {0}" : "X"; }
};

inline DlpsIsolated dlps_iso(const DlpsSpace& x) {
  return {x, !dlps_acc(x).empty()};
}

inline bool dlps_is_discrete(const DlpsSpace& x) { return dlps_acc(x).empty(); }

/// inf{d+(x, y) : x != y}: the second-smallest element of a finite set, 0 once
/// a tail is present (consecutive terms give d+ = first * ratio^k -> 0), and
/// nullopt for a one-point set.
inline std::optional<Rational> dlps_pairwise_infimum(const DlpsSpace& x) {
  if (!x.tails().empty()) return Rational(0);
  auto elems = x.elements();
  if (elems.size() < 2) return std::nullopt;
  return elems[1];
}

inline bool dlps_is_metrically_discrete(const DlpsSpace& x) {
  auto inf = dlps_pairwise_infimum(x);
  return !inf || inf->is_positive();
}

/// Bounded sets lie in some [0, t], and each tail puts infinitely many points
/// in every such interval.
inline bool dlps_is_locally_finite(const DlpsSpace& x) { return x.tails().empty(); }

/// Criterion "X ∩ [0, t] is finite for every t > 0", which decides bounded
/// compactness of the ballean. For X itself with 0 present and tails, X is
/// compact (every tail converges to 0 inside X); see
/// dlps_point_space_is_boundedly_compact for that value.
inline bool dlps_is_boundedly_compact(const DlpsSpace& x) { return x.tails().empty(); }

/// Bounded compactness of (X, d+) itself: a tail without 0 is closed, bounded
/// and not compact; with 0 present every sequence of tail terms converges.
inline bool dlps_point_space_is_boundedly_compact(const DlpsSpace& x) {
  return x.tails().empty() || x.has_zero();
}

// ---------------------------------------------------------------------------
// Ballean analysis

struct DlpsBalleanReport {
  bool point_discrete = false;
  bool point_metrically_discrete = false;
  bool point_locally_finite = false;
  bool point_boundedly_compact = false;
  bool bounded_finiteness_criterion = false;
  std::vector<Rational> point_acc;

  bool ballean_discrete = false;
  std::vector<SymbolicBall> ballean_acc;
  bool ballean_metrically_discrete = false;
  bool ballean_locally_finite = false;
  bool ballean_boundedly_compact = false;
  /// Discrete <=> metrically discrete for the ballean is only claimed when
  /// 0 ∈ X; otherwise the pair is reported as is.
  bool zero_hypothesis = false;
};

/// Ballean predicates derived from the ballean side: accumulation balls are the
/// singletons of accumulation points, and the Hausdorff infimum is computed
/// over ball pairs. The result is checked against the point-space predicates
/// and InvariantViolation is thrown on any disagreement.
inline DlpsBalleanReport dlps_ballean_analysis(const DlpsSpace& x) {
  DlpsBalleanReport r;
  r.point_acc = dlps_acc(x);
  r.point_discrete = dlps_is_discrete(x);
  r.point_metrically_discrete = dlps_is_metrically_discrete(x);
  r.point_locally_finite = dlps_is_locally_finite(x);
  r.point_boundedly_compact = dlps_point_space_is_boundedly_compact(x);
  r.bounded_finiteness_criterion = dlps_is_boundedly_compact(x);
  r.zero_hypothesis = x.has_zero();

  bool zero_acc = std::find(r.point_acc.begin(), r.point_acc.end(), Rational(0)) !=
                  r.point_acc.end();
  r.ballean_discrete = !zero_acc;
  for (const auto& p : r.point_acc) r.ballean_acc.push_back(SymbolicBall::singleton(p));

  if (x.is_finite()) {
    auto balls = dlps_ballean(x);
    std::optional<Rational> inf;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      for (std::size_t j = i + 1; j < balls.size(); ++j) {
        Rational dh = dlps_hausdorff(x, balls[i], balls[j]);
        if (!inf || dh < *inf) inf = dh;
      }
    }
    r.ballean_metrically_discrete = !inf || inf->is_positive();
    r.ballean_locally_finite = true;
    r.ballean_boundedly_compact = true;
  } else {
    // Singletons of consecutive tail terms sit at d_H = first * ratio^k -> 0,
    // and every [0, t] holds infinitely many singleton balls.
    r.ballean_metrically_discrete = false;
    r.ballean_locally_finite = false;
    r.ballean_boundedly_compact = false;
  }

  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvariantViolation, what);
  };
  require(r.ballean_discrete == r.point_discrete, "ballean discreteness disagrees with X");
  require(r.ballean_metrically_discrete == r.point_metrically_discrete,
          "ballean metric discreteness disagrees with X");
  require(r.ballean_locally_finite == r.point_locally_finite,
          "ballean local finiteness disagrees with X");
  require(!r.ballean_boundedly_compact || r.point_boundedly_compact,
          "bounded compactness of the ballean without that of X");
  if (r.zero_hypothesis) {
    require(r.ballean_discrete == r.ballean_metrically_discrete,
            "ballean discrete but not metrically discrete with 0 in X");
    require(r.ballean_boundedly_compact == r.bounded_finiteness_criterion,
            "bounded compactness of the ballean disagrees with the finiteness criterion");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Finite samples

/// Finite subspace: 0 if present, every finite point, and tail terms >= cut.
/// Beyond n candidates, 0 is kept first and then the largest values. Points
/// are labeled by their value and listed in ascending order.
inline FiniteUltrametricSpace dlps_sample(const DlpsSpace& x, std::size_t n,
                                          const Rational& cut) {
  if (n == 0) throw Error(ErrorKind::BadParams, "n must be >= 1");
  if (!cut.is_positive()) throw Error(ErrorKind::BadParams, "cut must be positive");
  std::vector<Rational> values = x.finite_points();
  for (const auto& t : x.tails()) {
    for (Rational v = t.first; v >= cut; v *= t.ratio) values.push_back(v);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<Rational> picked;
  if (x.has_zero()) picked.push_back(Rational(0));
  for (const auto& v : values) {
    if (picked.size() >= n) break;
    picked.push_back(v);
  }
  if (picked.empty()) throw Error(ErrorKind::BadParams, "cut excludes every point");
  std::sort(picked.begin(), picked.end());
  const std::size_t m = picked.size();
  DistanceMatrix dist(m, std::vector<Rational>(m));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back(picked[i].to_string());
    for (std::size_t j = 0; j < m; ++j) dist[i][j] = dlps_distance(picked[i], picked[j]);
  }
  return make_space(std::move(dist), std::move(labels));
}

}  // namespace ultraball
