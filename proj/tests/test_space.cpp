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


#include "ultraball/space.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ultraball/ballean.hpp"

namespace {

using namespace ultraball;
using fixtures::ints;
using fixtures::three_points;

Violation violation_of(DistanceMatrix m) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m.size(); ++i) labels.push_back(point_label(i));
  auto v = validate_ultrametric(std::move(m), std::move(labels));
  EXPECT_TRUE(std::holds_alternative<Violation>(v));
  return std::get<Violation>(v);
}

TEST(Validate, AcceptsRunningExample) {
  auto s = three_points();
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.distance(0, 2), Rational(2));
  EXPECT_EQ(s.index_of("c"), 2u);
}

TEST(Validate, AcceptsOnePoint) {
  auto v = validate_ultrametric(ints({{0}}), {"x"});
  ASSERT_TRUE(std::holds_alternative<FiniteUltrametricSpace>(v));
  EXPECT_TRUE(std::get<FiniteUltrametricSpace>(v).is_equidistant());
}

TEST(Validate, TriangleWitnessNamesTheLongSide) {
  // d(a,b) = 1, d(b,c) = 1, d(a,c) = 3: witness is (a, c, b).
  auto v = violation_of(ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  EXPECT_EQ(v.axiom, Axiom::StrongTriangleViolation);
  EXPECT_EQ(v.witness, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(Validate, EntryViolations) {
  EXPECT_EQ(violation_of(ints({{0, -1}, {-1, 0}})),
            (Violation{Axiom::NegativeEntry, {0, 1}}));
  EXPECT_EQ(violation_of(ints({{0, 1}, {1, 2}})), (Violation{Axiom::NonzeroDiagonal, {1}}));
  EXPECT_EQ(violation_of(ints({{0, 0}, {0, 0}})), (Violation{Axiom::ZeroOffDiagonal, {0, 1}}));
  EXPECT_EQ(violation_of(ints({{0, 1, 2}, {1, 0, 2}, {2, 3, 0}})),
            (Violation{Axiom::AsymmetricEntry, {1, 2}}));
}

TEST(Validate, FirstWitnessInScanOrder) {
  // Both a zero entry at (0,2) and an asymmetry at (1,2); row 0 comes first.
  EXPECT_EQ(violation_of(ints({{0, 1, 0}, {1, 0, 2}, {0, 5, 0}})),
            (Violation{Axiom::ZeroOffDiagonal, {0, 2}}));
  // Entries fine, two bad triangles; (0,1,*) is scanned before (0,3,*).
  auto v = violation_of(ints({{0, 5, 1, 5}, {5, 0, 1, 1}, {1, 1, 0, 1}, {5, 1, 1, 0}}));
  EXPECT_EQ(v, (Violation{Axiom::StrongTriangleViolation, {0, 1, 2}}));
}

TEST(Validate, StructuralErrorsThrow) {
  EXPECT_THROW(validate_ultrametric({}, {}), Error);
  EXPECT_THROW(validate_ultrametric(ints({{0, 1}}), {"a"}), Error);
  EXPECT_THROW(validate_ultrametric(ints({{0, 1}, {1, 0}}), {"a"}), Error);
  EXPECT_THROW(validate_ultrametric(ints({{0, 1}, {1, 0}}), {"a", "a"}), Error);
}

TEST(Validate, CorruptedRandomSpacesAreRejected) {
  // Shrinking one side of the top-level triangle breaks isosceles-ness.
  for (const auto& s : fixtures::random_spaces(11, 10, 5)) {
    auto d = s.distinct_distances();
    if (d.size() < 2) continue;
    DistanceMatrix m = s.matrix();
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (m[i][j] == d.back()) {
          m[i][j] = m[j][i] = d.back() * Rational(2);
          auto v = validate_ultrametric(m, s.labels());
          ASSERT_TRUE(std::holds_alternative<Violation>(v));
          auto w = std::get<Violation>(v);
          EXPECT_EQ(w.axiom, Axiom::StrongTriangleViolation);
          EXPECT_GT(m[w.witness[0]][w.witness[1]],
                    max(m[w.witness[0]][w.witness[2]], m[w.witness[2]][w.witness[1]]));
          goto next;
        }
      }
    }
  next:;
  }
}

TEST(Diam, Examples) {
  auto s = three_points();
  EXPECT_EQ(diam(s, PointSet{0}), Rational(0));
  EXPECT_EQ(diam(s, PointSet{0, 1}), Rational(1));
  EXPECT_EQ(diam(s, PointSet{0, 1, 2}), Rational(2));
  EXPECT_THROW(diam(s, PointSet{}), Error);
}

TEST(Diam, ShortcutMatchesPairwiseOnAllSubsets) {
  for (const auto& s : fixtures::random_spaces(3, 10, 3)) {
    for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
      PointSet sub;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask >> i & 1) sub.push_back(i);
      }
      ASSERT_EQ(diam(s, sub), diam_pairwise(s, sub));
      ASSERT_EQ(diam(s, sub), oracle::diameter(s.matrix(), sub));
    }
  }
}

TEST(ClosedBall, Examples) {
  auto s = three_points();
  EXPECT_EQ(closed_ball(s, 0, 0).members, PointSet{0});
  auto b = closed_ball(s, 0, 1);
  EXPECT_EQ(b.members, (PointSet{0, 1}));
  EXPECT_EQ(b.diameter, Rational(1));
  auto c = closed_ball(s, 0, Rational(3, 2));
  EXPECT_EQ(c.members, (PointSet{0, 1}));
  EXPECT_EQ(c.diameter, Rational(1));
  try {
    closed_ball(s, 0, Rational(-1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeRadius);
  }
}

TEST(ClosedBall, EveryMemberIsACenter) {
  for (const auto& s : fixtures::random_spaces(5, 9, 6)) {
    std::vector<Rational> radii{Rational(0)};
    for (const auto& d : s.distinct_distances()) {
      radii.push_back(d);
      radii.push_back(d + Rational(1, 4));
      radii.push_back(d - Rational(1, 4));
    }
    for (std::size_t c = 0; c < s.size(); ++c) {
      for (const auto& r : radii) {
        if (r.sign() < 0) continue;
        auto b = closed_ball(s, c, r);
        for (std::size_t a : b.members) {
          ASSERT_EQ(closed_ball(s, a, r).members, b.members);
          ASSERT_EQ(closed_ball(s, a, b.diameter).members, b.members);
        }
        ASSERT_TRUE(is_canonical_ball(s, b));
      }
    }
  }
}

TEST(SmallestBall, Examples) {
  auto s = three_points();
  EXPECT_EQ(smallest_ball(s, PointSet{0}).members, PointSet{0});
  EXPECT_EQ(smallest_ball(s, PointSet{0, 2}).members, (PointSet{0, 1, 2}));
  auto b = closed_ball(s, 1, 1);
  EXPECT_EQ(smallest_ball(s, b.members), b);
}

TEST(SmallestBall, ContainedInEveryBallHoldingTheSet) {
  for (const auto& s : fixtures::random_spaces(8, 8, 4)) {
    Ballean b = enumerate_ballean(s);
    for (std::size_t mask = 1; mask < (std::size_t{1} << s.size()); ++mask) {
      PointSet sub;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask >> i & 1) sub.push_back(i);
      }
      Ball star = smallest_ball(s, sub);
      ASSERT_TRUE(contains_all(star.members, sub));
      for (std::size_t c : sub) ASSERT_EQ(closed_ball(s, c, diam(s, sub)), star);
      for (const Ball& other : b.balls()) {
        if (contains_all(other.members, sub)) {
          ASSERT_TRUE(contains_all(other.members, star.members));
        }
      }
    }
  }
}

TEST(BallRelation, Examples) {
  auto s = three_points();
  Ball a = closed_ball(s, 0, 0), ab = closed_ball(s, 0, 1), c = closed_ball(s, 2, 0);
  EXPECT_EQ(ball_relation(s, a, ab), BallRelation::ProperSubset);
  EXPECT_EQ(ball_relation(s, ab, a), BallRelation::ProperSuperset);
  EXPECT_EQ(ball_relation(s, ab, c), BallRelation::Disjoint);
  EXPECT_EQ(ball_relation(s, ab, ab), BallRelation::Equal);
  Ball fake{{0, 2}, Rational(2)};
  try {
    ball_relation(s, fake, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ForeignBall);
  }
}

TEST(BallRelation, NoPartialOverlapAndDisjointBallsAreEquidistant) {
  for (const auto& s : fixtures::random_spaces(9, 12, 4)) {
    Ballean b = enumerate_ballean(s);
    for (const Ball& p : b.balls()) {
      for (const Ball& q : b.balls()) {
        auto rel = ball_relation(s, p, q);
        if (rel != BallRelation::Disjoint) {
          ASSERT_TRUE(contains_all(p.members, q.members) || contains_all(q.members, p.members));
          continue;
        }
        Rational whole = diam(s, set_union(p.members, q.members));
        for (std::size_t x : p.members) {
          for (std::size_t y : q.members) ASSERT_EQ(s.distance(x, y), whole);
        }
      }
    }
  }
}

TEST(IsoAcc, FiniteSpacesAreDiscrete) {
  for (const auto& s : fixtures::random_spaces(12, 6, 3)) {
    auto all = all_points(s.size());
    EXPECT_EQ(isolated_points(s, all), all);
    EXPECT_TRUE(accumulation_points(s, all).empty());
    EXPECT_TRUE(is_dense_subset(s, all));
    EXPECT_TRUE(is_discrete_subset(s, all));
  }
}

}  // namespace
