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


#include "ultraball/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ultraball");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = ultraball::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
  return std::string(ULTRABALL_SAMPLES_DIR) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ultraball_test_" + name)).string();
}

TEST(Cli, ValidateGoodAndBad) {
  auto ok = run({"validate", sample("three_points.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["valid"], true);
  auto bad = run({"validate", sample("triangle_violation.json")});
  EXPECT_EQ(bad.code, 1);
  auto j = json::parse(bad.out);
  EXPECT_EQ(j["axiom"], "StrongTriangleViolation");
  EXPECT_EQ(j["witness"], json({"a", "c", "b"}));
}

TEST(Cli, Hausdorff) {
  auto r = run({"hausdorff", sample("three_points.json"), "--ball", "a,b", "--ball", "c"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "2\n");
  auto o = run({"hausdorff", sample("three_points.json"), "--ball", "b,a", "--ball", "a",
                "--oracle"});
  EXPECT_EQ(o.out, "1\n");
  auto foreign = run({"hausdorff", sample("three_points.json"), "--ball", "a,c", "--ball", "b"});
  EXPECT_EQ(foreign.code, 1);
  EXPECT_NE(foreign.err.find("ForeignBall"), std::string::npos);
}

TEST(Cli, BalleanAndIterate) {
  auto r = run({"ballean", sample("three_points.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["balls"].size(), 5u);
  EXPECT_EQ(j["balls"][3], json({"a", "b"}));
  EXPECT_EQ(j["hausdorff"][0][1], "1");
  auto out = temp_path("ballean2.json");
  auto r2 = run({"ballean", sample("three_points.json"), "--iterate", "2", "--out", out});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_TRUE(r2.out.empty());
  EXPECT_GE(ultraball::io::load_json_file(out)["balls"].size(), 5u);
  EXPECT_EQ(run({"ballean", sample("three_points.json"), "--iterate", "9"}).code, 2);
}

TEST(Cli, SmallestBallTreeIsometric) {
  auto sb = run({"smallest-ball", sample("three_points.json"), "--set", "a,c"});
  ASSERT_EQ(sb.code, 0) << sb.err;
  EXPECT_EQ(json::parse(sb.out)["members"], json({"a", "b", "c"}));
  EXPECT_EQ(run({"tree", sample("three_points.json")}).out, "(2 (1 a b) c)\n");
  EXPECT_EQ(run({"tree", sample("three_points.json"), "--code"}).out, "(2 (1 * *) *)\n");
  EXPECT_EQ(run({"isometric", sample("three_points.json"), sample("three_points.json")}).out,
            "true\n");
  EXPECT_EQ(run({"isometric", sample("three_points.json"), sample("five_points.json")}).out,
            "false\n");
}

TEST(Cli, Dlps) {
  auto a = run({"dlps", "analyze", sample("dlps_zero_tail.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  auto j = json::parse(a.out);
  EXPECT_EQ(j["acc"], json({"0"}));
  EXPECT_EQ(j["ballean_acc"], json({"{0}"}));
  EXPECT_EQ(j["ballean_discrete"], false);
  auto s = run({"dlps", "sample", sample("dlps_zero_tail.json"), "-n", "4", "--cut", "1/8"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["labels"], json({"0", "1/4", "1/2", "1"}));
}

TEST(Cli, VerifyAndReplay) {
  auto v = run({"verify", "--seed", "3", "--trials", "4", "--max-points", "6", "--no-timing"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(json::parse(v.out)["status"], "pass");
  auto bad = run({"verify", "--trials", "1", "--checks", "H2", "--replay",
                  sample("triangle_violation.json")});
  EXPECT_EQ(bad.code, 1);
  auto record = json::parse(bad.out)["checks"][0]["failures"][0];
  auto path = temp_path("failure.json");
  ultraball::io::write_json_file(path, record);
  auto again = run({"verify", "--trials", "1", "--checks", "H2", "--replay", path});
  EXPECT_EQ(again.code, 1);
  EXPECT_EQ(run({"verify", "--checks", "H0"}).code, 1);
}

TEST(Cli, Probe) {
  auto p = run({"probe-q63", "--trials", "5", "--max-points", "5"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(json::parse(p.out)["conclusion"], "no finite witness possible, |B̄_X| ≥ n+1 for n ≥ 2");
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"hausdorff", sample("three_points.json"), "--ball", "a"}).code, 2);
  EXPECT_EQ(run({"verify", "--trials", "x"}).code, 2);
  auto missing = run({"validate", sample("no_such_file.json")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("InvalidInput"), std::string::npos);
  EXPECT_EQ(run({"hausdorff", sample("three_points.json"), "--ball", "z", "--ball", "a"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
