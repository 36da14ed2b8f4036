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
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ultraball/ballean.hpp"
#include "ultraball/dendrogram.hpp"
#include "ultraball/dlps.hpp"
#include "ultraball/error.hpp"
#include "ultraball/io.hpp"
#include "ultraball/random.hpp"
#include "ultraball/space.hpp"

namespace ultraball::harness {

using nlohmann::json;

struct TrialConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 200;
  std::size_t max_points = 12;
  std::vector<Rational> level_pool = default_level_pool();
  /// Check ids to run; empty selects all.
  std::vector<std::string> checks;
  /// Extra spaces run through every selected check, unvalidated on input.
  std::vector<io::RawSpace> replay;
  std::size_t families_per_space = 50;
  /// Ball pairs are exhaustive up to this many points, sampled above.
  std::size_t exhaustive_pairs_up_to = 12;
  std::size_t sampled_pairs = 500;
  bool timing = true;
};

struct Failure {
  std::string check;
  std::string source;  // "random" or "replay"
  std::size_t trial = 0;
  std::uint64_t check_seed = 0;
  std::string message;
  json space;
};

struct CheckResult {
  std::string id;
  std::string statement;
  std::size_t trials_run = 0;
  std::size_t skipped = 0;
  std::vector<Failure> failures;
  double elapsed_ms = 0;
  json stats = json::object();
};

struct CheckReport {
  TrialConfig config;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.failures.empty(); });
  }
};

struct CheckContext {
  const TrialConfig& config;
  Rng rng;
  json& stats;
};

/// First failure message for this space, or nullopt.
using CheckFn = std::function<std::optional<std::string>(const FiniteUltrametricSpace&,
                                                         CheckContext&)>;

struct CheckSpec {
  std::string id;
  std::string statement;
  CheckFn run;
};

namespace detail {

inline HausdorffOptions verified() { return {true}; }

inline std::vector<std::pair<std::size_t, std::size_t>> ball_pairs(std::size_t m,
                                                                   std::size_t n,
                                                                   CheckContext& ctx) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n <= ctx.config.exhaustive_pairs_up_to) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) out.emplace_back(i, j);
    }
  } else if (m >= 2) {
    for (std::size_t k = 0; k < ctx.config.sampled_pairs; ++k) {
      std::size_t i = ctx.rng.below(m);
      std::size_t j = ctx.rng.below(m - 1);
      if (j >= i) ++j;
      out.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  return out;
}

inline std::string set_text(const FiniteUltrametricSpace& s, const PointSet& p) {
  std::string out = "{";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + s.label(p[i]);
  return out + "}";
}

inline std::optional<std::string> hausdorff_agreement(const FiniteUltrametricSpace& s,
                                                      CheckContext& ctx) {
  Ballean b = enumerate_ballean(s);
  for (auto [i, j] : ball_pairs(b.size(), s.size(), ctx)) {
    Rational oracle = hausdorff_oracle(s, b[i].members, b[j].members);
    Rational piecewise = hausdorff_piecewise(s, b[i], b[j]);
    Rational uni = hausdorff_union(s, b[i], b[j]);
    if (oracle != piecewise || piecewise != uni) {
      return "balls " + set_text(s, b[i].members) + " and " + set_text(s, b[j].members) +
             ": oracle " + oracle.to_string() + ", piecewise " + piecewise.to_string() +
             ", diam of union " + uni.to_string();
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> validation_message(const Validation& v,
                                                     const std::vector<std::string>& labels,
                                                     const std::string& what) {
  if (auto* bad = std::get_if<Violation>(&v)) {
    return what + " violates " + std::string(to_string(bad->axiom)) + " at " +
           io::violation_to_json(*bad, labels)["witness"].dump();
  }
  return std::nullopt;
}

inline std::optional<std::string> ballean_ultrametric(const FiniteUltrametricSpace& s,
                                                      CheckContext& ctx) {
  const FiniteUltrametricSpace* current = &s;
  std::optional<FiniteUltrametricSpace> holder;
  for (int depth = 1; depth <= 2; ++depth) {
    auto [labels, dist] = ballean_matrix(enumerate_ballean(*current));
    auto names = labels;
    auto v = validate_ultrametric(std::move(dist), std::move(labels));
    if (auto msg = validation_message(v, names, "ballean at depth " + std::to_string(depth))) {
      return msg;
    }
    holder = std::get<FiniteUltrametricSpace>(std::move(v));
    current = &*holder;
  }
  (void)ctx;
  return std::nullopt;
}

inline std::optional<std::string> smallest_ball_identity(const FiniteUltrametricSpace& s,
                                                         CheckContext& ctx) {
  Ballean b = enumerate_ballean(s);
  for (auto [i, j] : ball_pairs(b.size(), s.size(), ctx)) {
    auto [star, dist] = smallest_ball_distance(s, b[i], b[j], verified());
    PointSet uni = set_union(b[i].members, b[j].members);
    if (!contains_all(star.members, uni)) return "smallest ball misses part of the union";
    if (dist != diam(s, uni)) return "d_H differs from the diameter of the union";
    for (const Ball& other : b.balls()) {
      if (contains_all(other.members, uni) && !contains_all(other.members, star.members)) {
        return "ball " + set_text(s, other.members) + " holds the union but not " +
               set_text(s, star.members);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> family_triple(const FiniteUltrametricSpace& s,
                                                CheckContext& ctx) {
  Ballean b = enumerate_ballean(s);
  // A lone ball satisfies the triple equality exactly when it is a singleton.
  for (const Ball& ball : b.balls()) {
    Rational lone_family(0);
    bool equal = lone_family == diam_pairwise(s, ball.members);
    if (equal != (ball.size() == 1)) return "lone-ball family rule fails";
  }
  if (b.size() < 2) return std::nullopt;
  for (std::size_t f = 0; f < ctx.config.families_per_space; ++f) {
    std::size_t k = ctx.rng.between(2, b.size());
    std::vector<std::size_t> idx = all_points(b.size());
    ctx.rng.shuffle(idx);
    std::vector<Ball> members;
    for (std::size_t t = 0; t < k; ++t) members.push_back(b[idx[t]]);
    family_diameters(s, BallFamily::of(std::move(members)), verified());
  }
  return std::nullopt;
}

inline std::optional<std::string> size_and_bijection(const FiniteUltrametricSpace& s,
                                                     CheckContext& ctx) {
  const std::size_t n = s.size();
  Ballean b = enumerate_ballean(s);
  if (b.size() > 2 * n - 1) return "ballean has " + std::to_string(b.size()) + " balls";
  if (!nodes_match_ballean(s)) return "dendrogram nodes differ from balls";
  Dendrogram d = build_dendrogram(s);
  if (!(dendrogram_to_space(d) == s)) return "matrix -> tree -> matrix is not the identity";
  if (canonical_code(build_dendrogram(dendrogram_to_space(d))) != canonical_code(d)) {
    return "tree -> matrix -> tree changed the tree";
  }
  auto binary = random_binary_space(ctx.rng.next(), n);
  if (enumerate_ballean(binary).size() != 2 * n - 1) {
    return "binary merge tree with distinct levels does not give 2n-1 balls";
  }
  return std::nullopt;
}

inline std::optional<std::string> singleton_isometry(const FiniteUltrametricSpace& s,
                                                     CheckContext&) {
  auto image = singleton_embedding(s, verified());
  Ballean b = enumerate_ballean(s);
  for (const Ball& x : image) {
    if (!b.index_of(x.members)) return "singleton missing from the ballean";
  }
  return std::nullopt;
}

inline std::optional<std::string> metric_discreteness(const FiniteUltrametricSpace& s,
                                                      CheckContext&) {
  auto point_min = min_positive_distance(s);
  auto ball_min = min_positive_distance(ballean_space(s));
  if (point_min != ball_min) {
    return "minimum positive distance " +
           (point_min ? point_min->to_string() : std::string("none")) +
           " vs minimum positive d_H " + (ball_min ? ball_min->to_string() : std::string("none"));
  }
  return std::nullopt;
}

inline std::optional<std::string> equidistant_structure(const FiniteUltrametricSpace& s,
                                                        CheckContext& ctx) {
  // Equivalences on the given space: equidistant <=> ballean is the singletons
  // plus X <=> ballean equidistant.
  Ballean b = enumerate_ballean(s);
  std::size_t positive = 0;
  for (const Ball& ball : b.balls()) positive += ball.diameter.is_positive() ? 1 : 0;
  bool shape = b.size() == s.size() + positive && positive == (s.size() >= 2 ? 1 : 0);
  bool eq = s.is_equidistant();
  bool ballean_eq = ballean_space(s).is_equidistant();
  if (eq != shape || eq != ballean_eq) return "equidistance equivalences disagree";

  const auto& pool = ctx.config.level_pool;
  const Rational& t = pool[ctx.rng.below(pool.size())];
  const std::size_t n = s.size();
  auto e = equidistant_space(n, t);
  auto eb = ballean_space(e);
  if (n == 1) {
    if (eb.size() != 1 || !are_isometric(e, eb)) return "one-point ballean is not a copy";
    return std::nullopt;
  }
  if (eb.size() != n + 1) return "equidistant ballean has " + std::to_string(eb.size()) + " points";
  auto vals = eb.distinct_distances();
  if (vals.size() != 1 || vals[0] != t) return "equidistant ballean lost its distance";
  if (are_isometric(e, eb)) return "finite equidistant space isometric to its ballean";
  return std::nullopt;
}

inline std::optional<std::string> subball_restriction(const FiniteUltrametricSpace& s,
                                                      CheckContext&) {
  Ballean b = enumerate_ballean(s);
  for (const Ball& y : b.balls()) {
    std::vector<PointSet> expected;
    for (const Ball& other : b.balls()) {
      if (contains_all(y.members, other.members)) expected.push_back(other.members);
    }
    std::vector<PointSet> got;
    Ballean inner = enumerate_ballean(s.restricted(y.members));
    for (const Ball& sub : inner.balls()) {
      PointSet mapped;
      for (std::size_t a : sub.members) mapped.push_back(y.members[a]);
      got.push_back(mapped);
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    if (expected != got) return "balls of the subspace " + set_text(s, y.members) + " differ";
  }
  return std::nullopt;
}

// --- DLPS block -------------------------------------------------------------

struct DlpsFixture {
  std::string name;
  DlpsSpace space;
  // discrete, metrically discrete, locally finite, boundedly compact,
  // ballean discrete, ballean_acc == {{0}}
  std::array<bool, 6> table;
};

inline std::vector<DlpsFixture> dlps_fixtures() {
  auto half = Rational(1, 2);
  return {
      {"{0,1,2}", DlpsSpace::create({Rational(1), Rational(2)}, true, {}),
       {true, true, true, true, true, false}},
      {"{0} u tail(1,1/2)", DlpsSpace::create({}, true, {{Rational(1), half}}),
       {false, false, false, false, false, true}},
      {"tail(1,1/2)", DlpsSpace::create({}, false, {{Rational(1), half}}),
       {true, false, false, false, true, false}},
  };
}

inline std::array<bool, 6> dlps_table(const DlpsSpace& x) {
  auto r = dlps_ballean_analysis(x);
  return {dlps_is_discrete(x),      dlps_is_metrically_discrete(x),
          dlps_is_locally_finite(x), dlps_is_boundedly_compact(x),
          r.ballean_discrete,        r.ballean_acc == std::vector{SymbolicBall::singleton(0)}};
}

inline std::optional<DlpsSpace> random_dlps(Rng& rng) {
  static const std::vector<Rational> values = {Rational(1, 4), Rational(1, 3), Rational(3, 4),
                                               Rational(1),    Rational(5, 4), Rational(2),
                                               Rational(5, 2), Rational(3),    Rational(5)};
  static const std::vector<Rational> firsts = {Rational(1), Rational(3, 2), Rational(1, 3),
                                               Rational(2), Rational(5)};
  static const std::vector<Rational> ratios = {Rational(1, 2), Rational(1, 3), Rational(2, 3),
                                               Rational(1, 4)};
  std::vector<Rational> pts;
  for (const auto& v : values) {
    if (rng.below(3) == 0) pts.push_back(v);
  }
  bool zero = rng.below(2) == 0;
  std::vector<GeometricTail> tails;
  std::size_t count = rng.below(3);
  for (std::size_t i = 0; i < count; ++i) {
    tails.push_back({firsts[rng.below(firsts.size())], ratios[rng.below(ratios.size())]});
  }
  // Overlapping presentations are rejected; drop pieces until one is valid.
  for (;;) {
    try {
      return DlpsSpace::create(pts, zero, tails);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidPresentation) throw;
      if (!tails.empty()) {
        tails.pop_back();
      } else if (!pts.empty()) {
        pts.pop_back();
      } else if (!zero) {
        zero = true;
      } else {
        return std::nullopt;
      }
    }
  }
}

inline std::optional<std::string> dlps_consistency_one(const DlpsSpace& x, CheckContext& ctx,
                                                       const std::string& name) {
  auto r = dlps_ballean_analysis(x);
  std::vector<SymbolicBall> expected_acc;
  for (const auto& p : dlps_acc(x)) expected_acc.push_back(SymbolicBall::singleton(p));
  if (r.ballean_acc != expected_acc) return name + ": ballean accumulation set mismatch";
  if (r.ballean_discrete != (dlps_acc(x).empty())) return name + ": ballean discreteness";
  if (dlps_is_boundedly_compact(x) != dlps_is_locally_finite(x)) {
    return name + ": bounded compactness criterion differs from local finiteness";
  }
  auto iso = dlps_iso(x);
  for (const auto& p : dlps_acc(x)) {
    if (iso.contains(p)) return name + ": point both isolated and accumulating";
  }

  std::size_t n = std::min<std::size_t>(std::max<std::size_t>(ctx.config.max_points, 1), 8);
  auto sample = dlps_sample(x, n, Rational(1, 64));
  if (auto m = hausdorff_agreement(sample, ctx)) return name + " sample: " + *m;
  if (auto m = ballean_ultrametric(sample, ctx)) return name + " sample: " + *m;

  // Finite shadow: symbolic balls that the sample holds completely.
  std::vector<Rational> vals;
  for (const auto& l : sample.labels()) vals.push_back(Rational::parse(l));
  auto intact = [&](const SymbolicBall& b) {
    if (b.kind == SymbolicBall::Kind::Singleton) return true;
    // A positive cutoff traps infinitely many tail terms.
    if (!x.is_finite()) return false;
    for (const auto& v : x.elements()) {
      if (v <= b.value && std::find(vals.begin(), vals.end(), v) == vals.end()) return false;
    }
    return true;
  };
  std::vector<std::pair<SymbolicBall, Ball>> shadows;
  for (std::size_t c = 0; c < vals.size(); ++c) {
    std::vector<Rational> radii{Rational(0)};
    radii.insert(radii.end(), vals.begin(), vals.end());
    for (const auto& r0 : radii) {
      auto sb = dlps_ball(x, vals[c], r0);
      if (!intact(sb)) continue;
      Ball fb = closed_ball(sample, c, r0);
      PointSet expect;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (ball_contains(x, sb, vals[i])) expect.push_back(i);
      }
      if (expect != fb.members) return name + ": sampled ball differs from symbolic ball";
      bool seen = std::any_of(shadows.begin(), shadows.end(),
                              [&](const auto& p) { return p.first == sb; });
      if (!seen) shadows.emplace_back(sb, fb);
    }
  }
  for (const auto& [s1, f1] : shadows) {
    for (const auto& [s2, f2] : shadows) {
      if (dlps_hausdorff(x, s1, s2) != hausdorff_balls(sample, f1, f2)) {
        return name + ": symbolic d_H differs from sampled d_H";
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> dlps_block(const FiniteUltrametricSpace&, CheckContext& ctx) {
  for (const auto& f : dlps_fixtures()) {
    if (dlps_table(f.space) != f.table) return f.name + ": predicate table mismatch";
    if (auto m = dlps_consistency_one(f.space, ctx, f.name)) return m;
  }
  if (auto x = random_dlps(ctx.rng)) {
    if (auto m = dlps_consistency_one(*x, ctx, io::dlps_to_json(*x).dump())) return m;
  }
  return std::nullopt;
}

// --- iso/acc identities -------------------------------------------------------

inline std::optional<std::string> iso_acc_on(const FiniteUltrametricSpace& y,
                                             const std::string& what) {
  const std::size_t m = y.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    PointSet s;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    }
    auto iso = isolated_points(y, s);
    auto acc = accumulation_points(y, s);
    if (intersects(iso, acc)) return what + ": iso and acc intersect";
    bool covers = set_union(iso, acc) == all_points(m);
    if (covers != is_dense_subset(y, s)) return what + ": iso u acc = Y does not match density";
  }
  auto dd = dense_discrete_subsets(y);
  if (dd.size() != 1) {
    return what + ": " + std::to_string(dd.size()) + " dense discrete subsets";
  }
  return std::nullopt;
}

inline constexpr std::size_t kExhaustiveSubsetLimit = 8;

inline std::optional<std::string> iso_acc_identities(const FiniteUltrametricSpace& s,
                                                     CheckContext& ctx) {
  auto y = ballean_space(s);
  // B0 against iso of the ballean, computed in the ballean space itself.
  Ballean b = enumerate_ballean(s);
  PointSet b0;
  for (const Ball& ball : b0_set(s)) b0.push_back(*b.index_of(ball.members));
  if (b0 != isolated_points(y, all_points(y.size()))) return "B0 differs from iso of the ballean";
  if (!accumulation_points(y, all_points(y.size())).empty()) {
    return "finite ballean has accumulation points";
  }
  iso_of_ballean(s);
  if (s.size() <= kExhaustiveSubsetLimit) {
    if (auto m = iso_acc_on(s, "space")) return m;
  }
  if (y.size() <= kExhaustiveSubsetLimit) {
    if (auto m = iso_acc_on(y, "ballean")) return m;
    if (dense_discrete_subsets(y).front() != b0) return "dense discrete subset is not B0";
  }
  (void)ctx;
  return std::nullopt;
}

inline constexpr std::size_t kIterationSizeLimit = 64;

inline std::optional<std::string> iterated_sanity(const FiniteUltrametricSpace& s,
                                                  CheckContext& ctx) {
  FiniteUltrametricSpace current = s;
  json& sizes = ctx.stats["max_size_by_depth"];
  if (!sizes.is_array()) sizes = json::array({0, 0, 0, 0});
  sizes[0] = std::max(sizes[0].get<std::size_t>(), s.size());
  for (std::size_t depth = 1; depth <= kDefaultMaxIterationDepth; ++depth) {
    if (current.size() > kIterationSizeLimit) break;
    auto [labels, dist] = ballean_matrix(enumerate_ballean(current));
    auto names = labels;
    auto v = validate_ultrametric(std::move(dist), std::move(labels));
    if (auto msg = validation_message(v, names, "iterated ballean at depth " +
                                                    std::to_string(depth))) {
      return msg;
    }
    current = std::get<FiniteUltrametricSpace>(std::move(v));
    sizes[depth] = std::max(sizes[depth].get<std::size_t>(), current.size());
  }
  return std::nullopt;
}

}  // namespace detail

inline const std::vector<CheckSpec>& all_checks() {
  static const std::vector<CheckSpec> checks = {
      {"H1", "d_H of distinct balls: sup-inf oracle = piecewise dist/max-diam form = diam of union",
       detail::hausdorff_agreement},
      {"H2", "ballean under d_H is ultrametric, also after a second iteration",
       detail::ballean_ultrametric},
      {"H3", "d_H(B1, B2) = diam of the smallest ball holding B1 u B2",
       detail::smallest_ball_identity},
      {"H4", "diam of a ball family under d_H = diam of its union = diam of its smallest ball",
       detail::family_triple},
      {"H5", "|ballean| <= 2n-1, tree nodes are exactly the balls, matrix/tree round trip",
       detail::size_and_bijection},
      {"H6", "x -> {x} is an isometric embedding into the ballean", detail::singleton_isometry},
      {"H7", "ballean keeps the least positive distance (metric discreteness)",
       detail::metric_discreteness},
      {"H8", "equidistant X: ballean = singletons + X, equidistant, not isometric for 2 <= n < inf",
       detail::equidistant_structure},
      {"H9", "balls of a ball Y as a subspace = balls of X inside Y", detail::subball_restriction},
      {"H10", "d+ spaces: acc/discreteness/metric discreteness/local finiteness/bounded "
              "compactness agree between X and its ballean",
       detail::dlps_block},
      {"H11", "iso n acc = empty, iso u acc = Y iff dense, unique dense discrete subset = B0",
       detail::iso_acc_identities},
      {"H12", "iterated balleans stay ultrametric", detail::iterated_sanity},
  };
  return checks;
}

inline const CheckSpec& find_check(const std::string& id) {
  for (const auto& c : all_checks()) {
    if (c.id == id) return c;
  }
  throw Error(ErrorKind::ConfigError, "unknown check " + id);
}

inline void validate_config(const TrialConfig& config) {
  if (config.trials < 1) throw Error(ErrorKind::ConfigError, "trials must be >= 1");
  if (config.max_points < 1) throw Error(ErrorKind::ConfigError, "max_points must be >= 1");
  if (config.level_pool.empty()) throw Error(ErrorKind::ConfigError, "level pool is empty");
  for (const auto& v : config.level_pool) {
    if (!v.is_positive()) throw Error(ErrorKind::ConfigError, "levels must be positive");
  }
  for (const auto& id : config.checks) find_check(id);
}

/// Space for random trial `trial`, and the seed each check derives from.
inline std::pair<FiniteUltrametricSpace, std::uint64_t> trial_space(const TrialConfig& config,
                                                                    std::size_t trial) {
  std::uint64_t trial_seed = substream_seed(config.seed, trial);
  Rng rng(trial_seed);
  std::size_t n = rng.between(1, config.max_points);
  return {random_space(rng.next(), n, config.level_pool), trial_seed};
}

inline std::uint64_t check_seed(std::uint64_t trial_seed, std::size_t check_index) {
  return substream_seed(trial_seed, 1000 + check_index);
}

/// Runs one check once; exceptions count as failures.
inline std::optional<std::string> run_check_once(const CheckSpec& check,
                                                 const FiniteUltrametricSpace& space,
                                                 std::uint64_t seed, const TrialConfig& config,
                                                 json& stats) {
  CheckContext ctx{config, Rng(seed), stats};
  try {
    return check.run(space, ctx);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

inline CheckReport run_suite(const TrialConfig& config) {
  validate_config(config);
  std::vector<std::size_t> selected;
  const auto& checks = all_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (config.checks.empty() ||
        std::find(config.checks.begin(), config.checks.end(), checks[i].id) !=
            config.checks.end()) {
      selected.push_back(i);
    }
  }
  CheckReport report{config, {}};
  for (std::size_t ci : selected) {
    CheckResult r;
    r.id = checks[ci].id;
    r.statement = checks[ci].statement;
    report.checks.push_back(std::move(r));
  }

  std::vector<std::chrono::steady_clock::duration> elapsed(selected.size());
  for (std::size_t t = 0; t < config.trials; ++t) {
    auto [space, trial_seed] = trial_space(config, t);
    for (std::size_t k = 0; k < selected.size(); ++k) {
      auto& result = report.checks[k];
      std::uint64_t seed = check_seed(trial_seed, selected[k]);
      auto start = std::chrono::steady_clock::now();
      auto msg = run_check_once(checks[selected[k]], space, seed, config, result.stats);
      elapsed[k] += std::chrono::steady_clock::now() - start;
      ++result.trials_run;
      if (msg) {
        result.failures.push_back(
            {result.id, "random", t, seed, *msg, io::space_to_json(space)});
      }
    }
  }

  for (std::size_t r = 0; r < config.replay.size(); ++r) {
    const auto& raw = config.replay[r];
    auto v = io::validate(raw);
    std::uint64_t replay_seed = substream_seed(config.seed, 1'000'000 + r);
    for (std::size_t k = 0; k < selected.size(); ++k) {
      auto& result = report.checks[k];
      std::uint64_t seed = check_seed(replay_seed, selected[k]);
      if (auto* bad = std::get_if<Violation>(&v)) {
        // An invalid input can only fail the ultrametricity check; every other
        // check needs a valid space to start from.
        if (result.id == "H2") {
          ++result.trials_run;
          result.failures.push_back({result.id, "replay", r, seed,
                                     "input violates " + std::string(to_string(bad->axiom)) +
                                         " at " +
                                         io::violation_to_json(*bad, raw.labels)["witness"].dump(),
                                     io::raw_space_to_json(raw)});
        } else {
          ++result.skipped;
        }
        continue;
      }
      const auto& space = std::get<FiniteUltrametricSpace>(v);
      auto start = std::chrono::steady_clock::now();
      auto msg = run_check_once(checks[selected[k]], space, seed, config, result.stats);
      elapsed[k] += std::chrono::steady_clock::now() - start;
      ++result.trials_run;
      if (msg) {
        result.failures.push_back({result.id, "replay", r, seed, *msg, io::space_to_json(space)});
      }
    }
  }
  for (std::size_t k = 0; k < selected.size(); ++k) {
    report.checks[k].elapsed_ms =
        std::chrono::duration<double, std::milli>(elapsed[k]).count();
  }
  return report;
}

inline json failure_to_json(const Failure& f) {
  return {{"check", f.check},     {"source", f.source},   {"trial", f.trial},
          {"check_seed", f.check_seed}, {"message", f.message}, {"space", f.space}};
}

inline json report_to_json(const CheckReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json failures = json::array();
    for (const auto& f : c.failures) failures.push_back(failure_to_json(f));
    json entry = {{"id", c.id},
                  {"statement", c.statement},
                  {"trials_run", c.trials_run},
                  {"skipped", c.skipped},
                  {"failures", std::move(failures)},
                  {"stats", c.stats}};
    if (report.config.timing) entry["elapsed_ms"] = c.elapsed_ms;
    checks.push_back(std::move(entry));
  }
  json pool = json::array();
  for (const auto& v : report.config.level_pool) pool.push_back(v.to_string());
  return {{"seed", report.config.seed},
          {"trials", report.config.trials},
          {"max_points", report.config.max_points},
          {"level_pool", std::move(pool)},
          {"replayed_spaces", report.config.replay.size()},
          {"checks", std::move(checks)},
          {"status", report.passed() ? "pass" : "fail"}};
}

/// Re-runs a serialized failure in isolation; nullopt means it now passes.
inline std::optional<std::string> replay_failure(const json& failure,
                                                 const TrialConfig& config = {}) {
  const auto& check = find_check(failure.at("check").get<std::string>());
  auto raw = io::raw_space_from_json(failure.at("space"));
  auto v = io::validate(raw);
  if (auto* bad = std::get_if<Violation>(&v)) {
    return "input violates " + std::string(to_string(bad->axiom)) + " at " +
           io::violation_to_json(*bad, raw.labels)["witness"].dump();
  }
  json stats = json::object();
  return run_check_once(check, std::get<FiniteUltrametricSpace>(v),
                        failure.at("check_seed").get<std::uint64_t>(), config, stats);
}

// ---------------------------------------------------------------------------
// Finite search for a non-equidistant space isometric to its ballean

inline constexpr const char* kFiniteProbeConclusion =
    "no finite witness possible, |B̄_X| ≥ n+1 for n ≥ 2";

struct ProbeReport {
  std::size_t examined = 0;
  std::size_t exhaustive_examined = 0;
  std::vector<json> isometric_to_ballean;   // spaces isometric to their ballean
  std::vector<json> non_equidistant_witnesses;
  std::size_t size_gap_violations = 0;      // n >= 2 with |ballean| < n + 1
};

inline json probe_to_json(const ProbeReport& p) {
  return {{"examined", p.examined},
          {"exhaustive_examined", p.exhaustive_examined},
          {"isometric_to_ballean", p.isometric_to_ballean},
          {"non_equidistant_witnesses", p.non_equidistant_witnesses},
          {"size_gap_violations", p.size_gap_violations},
          {"conclusion", kFiniteProbeConclusion},
          {"infinite_case", "open; a finite search cannot decide it"}};
}

/// Random trials plus every matrix over entries {1, 2, 3} up to 4 points.
inline ProbeReport probe_q63(const TrialConfig& config) {
  validate_config(config);
  ProbeReport report;
  auto examine = [&](const FiniteUltrametricSpace& s) {
    ++report.examined;
    auto b = ballean_space(s);
    if (s.size() >= 2 && b.size() < s.size() + 1) ++report.size_gap_violations;
    if (are_isometric(s, b)) {
      report.isometric_to_ballean.push_back(io::space_to_json(s));
      if (!s.is_equidistant()) report.non_equidistant_witnesses.push_back(io::space_to_json(s));
    }
  };
  for (std::size_t t = 0; t < config.trials; ++t) examine(trial_space(config, t).first);

  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < pairs; ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      DistanceMatrix m(n, std::vector<Rational>(n));
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          m[i][j] = m[j][i] = Rational(static_cast<std::int64_t>(c % 3 + 1));
          c /= 3;
        }
      }
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < n; ++i) labels.push_back(point_label(i));
      auto v = validate_ultrametric(std::move(m), std::move(labels));
      if (auto* s = std::get_if<FiniteUltrametricSpace>(&v)) {
        ++report.exhaustive_examined;
        examine(*s);
      }
    }
  }
  return report;
}

}  // namespace ultraball::harness
