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


#include "ultraball/harness.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace {

using namespace ultraball;
using harness::TrialConfig;

io::RawSpace corrupted() {
  // d(a,c) = 3 exceeds max(d(a,b), d(b,c)) = 1.
  return {{"a", "b", "c"}, fixtures::ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})};
}

const harness::CheckResult& result_for(const harness::CheckReport& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("missing check " + id);
}

TEST(Suite, OnePointSpacePassesEverything) {
  TrialConfig config;
  config.seed = 1;
  config.trials = 1;
  config.max_points = 1;
  auto report = harness::run_suite(config);
  EXPECT_EQ(report.checks.size(), harness::all_checks().size());
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.failures.empty()) << c.id << ": " << c.failures.front().message;
    EXPECT_EQ(c.trials_run, 1u);
  }
  EXPECT_TRUE(report.passed());
}

TEST(Suite, SmallRunPasses) {
  TrialConfig config;
  config.seed = 5;
  config.trials = 25;
  config.max_points = 8;
  auto report = harness::run_suite(config);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.failures.empty()) << c.id << ": " << c.failures.front().message;
  }
  EXPECT_EQ(harness::report_to_json(report)["status"], "pass");
}

TEST(Suite, DeterministicWithoutTiming) {
  TrialConfig config;
  config.trials = 15;
  config.max_points = 9;
  config.timing = false;
  auto a = harness::report_to_json(harness::run_suite(config)).dump();
  auto b = harness::report_to_json(harness::run_suite(config)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("elapsed_ms"), std::string::npos);
}

TEST(Suite, SeedChangesTheSpaces) {
  TrialConfig a, b;
  b.seed = a.seed + 1;
  std::size_t same = 0;
  for (std::size_t t = 0; t < 20; ++t) {
    same += harness::trial_space(a, t).first == harness::trial_space(b, t).first;
  }
  EXPECT_LT(same, 20u);
}

TEST(Suite, SelectedChecksOnly) {
  TrialConfig config;
  config.trials = 3;
  config.checks = {"H2", "H7"};
  auto report = harness::run_suite(config);
  ASSERT_EQ(report.checks.size(), 2u);
  EXPECT_EQ(report.checks[0].id, "H2");
  EXPECT_EQ(report.checks[1].id, "H7");
}

TEST(Suite, ConfigErrors) {
  auto expect_config_error = [](TrialConfig c) {
    try {
      harness::run_suite(c);
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
    }
  };
  TrialConfig c;
  c.trials = 0;
  expect_config_error(c);
  c = {};
  c.max_points = 0;
  expect_config_error(c);
  c = {};
  c.checks = {"H99"};
  expect_config_error(c);
  c = {};
  c.level_pool = {};
  expect_config_error(c);
  c = {};
  c.level_pool = {Rational(0)};
  expect_config_error(c);
}

TEST(Replay, CorruptedMatrixIsReportedByUltrametricityCheck) {
  TrialConfig config;
  config.trials = 1;
  config.max_points = 3;
  config.replay = {corrupted()};
  auto report = harness::run_suite(config);
  const auto& h2 = result_for(report, "H2");
  ASSERT_EQ(h2.failures.size(), 1u);
  EXPECT_EQ(h2.failures[0].source, "replay");
  EXPECT_NE(h2.failures[0].message.find("StrongTriangleViolation"), std::string::npos);
  EXPECT_NE(h2.failures[0].message.find("[\"a\",\"c\",\"b\"]"), std::string::npos);
  EXPECT_EQ(result_for(report, "H1").skipped, 1u);
  EXPECT_FALSE(report.passed());

  auto j = harness::report_to_json(report);
  EXPECT_EQ(j["status"], "fail");
  const auto& record = j["checks"][1]["failures"][0];
  auto again = harness::replay_failure(record);
  ASSERT_TRUE(again);
  EXPECT_NE(again->find("StrongTriangleViolation"), std::string::npos);
}

TEST(Replay, ValidReplaySpacesRunEveryCheck) {
  TrialConfig config;
  config.trials = 1;
  config.replay = {{fixtures::three_points().labels(), fixtures::three_points().matrix()}};
  auto report = harness::run_suite(config);
  EXPECT_TRUE(report.passed());
  for (const auto& c : report.checks) EXPECT_EQ(c.trials_run, 2u);
}

TEST(Replay, RecordOfAPassingCheckReplaysClean) {
  harness::Failure f{"H3", "random", 0, 99, "", io::space_to_json(fixtures::three_points())};
  EXPECT_FALSE(harness::replay_failure(harness::failure_to_json(f)));
}

TEST(Checks, EachSeesItsOwnStream) {
  EXPECT_NE(harness::check_seed(7, 0), harness::check_seed(7, 1));
  EXPECT_NE(harness::check_seed(7, 0), harness::check_seed(8, 0));
}

TEST(Checks, IteratedSizesRecorded) {
  TrialConfig config;
  config.trials = 5;
  config.max_points = 4;
  config.checks = {"H12"};
  auto report = harness::run_suite(config);
  const auto& sizes = report.checks[0].stats["max_size_by_depth"];
  ASSERT_EQ(sizes.size(), 4u);
  EXPECT_LE(sizes[0].get<std::size_t>(), 4u);
  EXPECT_GE(sizes[1].get<std::size_t>(), sizes[0].get<std::size_t>());
}

TEST(Probe, FiniteSearchFindsOnlyOnePointSpaces) {
  TrialConfig config;
  config.trials = 30;
  config.max_points = 7;
  auto p = harness::probe_q63(config);
  EXPECT_TRUE(p.non_equidistant_witnesses.empty());
  EXPECT_EQ(p.size_gap_violations, 0u);
  EXPECT_FALSE(p.isometric_to_ballean.empty());
  for (const auto& s : p.isometric_to_ballean) EXPECT_EQ(s["labels"].size(), 1u);
  // n = 1: 1 matrix, n = 2: 3, n = 3: 27 minus the non-isosceles ones, n = 4: ...
  EXPECT_GT(p.exhaustive_examined, 30u);
  auto j = harness::probe_to_json(p);
  EXPECT_EQ(j["conclusion"], "no finite witness possible, |B̄_X| ≥ n+1 for n ≥ 2");
}

TEST(Probe, SchemaWithTinyConfig) {
  TrialConfig config;
  config.trials = 1;
  config.max_points = 1;
  auto j = harness::probe_to_json(harness::probe_q63(config));
  for (const char* key : {"examined", "exhaustive_examined", "isometric_to_ballean",
                          "non_equidistant_witnesses", "size_gap_violations", "conclusion"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

}  // namespace
