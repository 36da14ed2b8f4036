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

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ultraball/ballean.hpp"
#include "ultraball/dendrogram.hpp"
#include "ultraball/dlps.hpp"
#include "ultraball/error.hpp"
#include "ultraball/harness.hpp"
#include "ultraball/io.hpp"
#include "ultraball/space.hpp"

namespace ultraball::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Validated space from a JSON file; violations throw InvalidInput.
inline FiniteUltrametricSpace load_space(const std::string& path) {
  auto raw = io::raw_space_from_json(io::load_json_file(path));
  return make_space(std::move(raw.matrix), std::move(raw.labels));
}

inline std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::InvalidInput, "empty label in '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, "no labels given");
  return out;
}

inline PointSet label_set(const FiniteUltrametricSpace& s, const std::string& text) {
  PointSet out;
  for (const auto& l : split_labels(text)) {
    auto i = s.index_of(l);
    if (!i) throw Error(ErrorKind::InvalidInput, "unknown label " + l);
    out.push_back(*i);
  }
  return normalized(std::move(out));
}

inline void emit(const json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json_file(out_path, j);
  }
}

/// A replay file holds a bare space or a failure record with a "space" field.
inline io::RawSpace load_replay(const std::string& path) {
  json j = io::load_json_file(path);
  if (j.is_object() && j.contains("space")) return io::raw_space_from_json(j.at("space"));
  return io::raw_space_from_json(j);
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balleans of finite and symbolic ultrametric spaces", "ultraball"};
  app.require_subcommand(1);

  std::string path, path2, out_path;
  bool flag = false;

  auto* validate = app.add_subcommand("validate", "check the ultrametric axioms");
  validate->add_option("space", path, "space JSON")->required();

  std::size_t iterate = 1;
  auto* ballean = app.add_subcommand("ballean", "list balls and their Hausdorff matrix");
  ballean->add_option("space", path, "space JSON")->required();
  ballean->add_option("--iterate", iterate, "ballean applications")
      ->check(CLI::Range(std::size_t{1}, kDefaultMaxIterationDepth));
  ballean->add_option("--out", out_path, "output file");

  std::vector<std::string> balls;
  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two balls");
  hausdorff->add_option("space", path, "space JSON")->required();
  hausdorff->add_option("--ball", balls, "comma-separated ball members")
      ->required()
      ->expected(2);
  hausdorff->add_flag("--oracle", flag, "use the sup-inf definition");

  std::string set_text;
  auto* smallest = app.add_subcommand("smallest-ball", "smallest ball containing a set");
  smallest->add_option("space", path, "space JSON")->required();
  smallest->add_option("--set", set_text, "comma-separated labels")->required();

  auto* tree = app.add_subcommand("tree", "dendrogram of a space");
  tree->add_option("space", path, "space JSON")->required();
  tree->add_flag("--code", flag, "print the canonical code instead");

  auto* isometric = app.add_subcommand("isometric", "whether two spaces are isometric");
  isometric->add_option("first", path, "space JSON")->required();
  isometric->add_option("second", path2, "space JSON")->required();

  auto* dlps = app.add_subcommand("dlps", "max-distance spaces on nonnegative rationals");
  dlps->require_subcommand(1);
  auto* analyze = dlps->add_subcommand("analyze", "point and ballean predicates");
  analyze->add_option("dlps", path, "presentation JSON")->required();
  std::size_t sample_n = 8;
  std::string cut_text = "1/64";
  auto* sample = dlps->add_subcommand("sample", "finite subspace");
  sample->add_option("dlps", path, "presentation JSON")->required();
  sample->add_option("-n", sample_n, "point budget")->check(CLI::PositiveNumber);
  sample->add_option("--cut", cut_text, "smallest tail term kept");
  sample->add_option("--out", out_path, "output file");

  harness::TrialConfig config;
  std::string checks_text;
  std::vector<std::string> replay_paths;
  bool no_timing = false;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "master seed");
    sub->add_option("--trials", config.trials, "random spaces");
    sub->add_option("--max-points", config.max_points, "largest random space");
    sub->add_option("--out", out_path, "output file");
  };
  auto* verify = app.add_subcommand("verify", "randomized property checks");
  add_config(verify);
  verify->add_option("--checks", checks_text, "comma-separated ids, e.g. H1,H2");
  verify->add_option("--replay", replay_paths, "space or failure JSON to re-run");
  verify->add_flag("--no-timing", no_timing, "omit elapsed times");

  auto* probe = app.add_subcommand("probe-q63", "search for spaces isometric to their ballean");
  add_config(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsageError;
  }

  try {
    if (*validate) {
      auto raw = io::raw_space_from_json(io::load_json_file(path));
      auto v = io::validate(raw);
      if (auto* bad = std::get_if<Violation>(&v)) {
        json j = io::violation_to_json(*bad, raw.labels);
        j["valid"] = false;
        out << j.dump(2) << '\n';
        err << "error: " << to_string(bad->axiom) << " at " << j["witness"].dump() << '\n';
        return kDomainError;
      }
      out << json{{"valid", true}, {"points", raw.labels.size()}}.dump(2) << '\n';
    } else if (*ballean) {
      auto levels = iterated_ballean_spaces(load_space(path), iterate - 1);
      emit(io::ballean_to_json(enumerate_ballean(levels.back())), out_path, out);
    } else if (*hausdorff) {
      auto s = load_space(path);
      Ball b1 = ball_from_members(s, label_set(s, balls.at(0)));
      Ball b2 = ball_from_members(s, label_set(s, balls.at(1)));
      out << (flag ? hausdorff_oracle(s, b1.members, b2.members) : hausdorff_balls(s, b1, b2))
          << '\n';
    } else if (*smallest) {
      auto s = load_space(path);
      out << io::ball_to_json(s, smallest_ball(s, label_set(s, set_text))).dump(2) << '\n';
    } else if (*tree) {
      auto d = build_dendrogram(load_space(path));
      out << (flag ? canonical_code(d) : to_text(d)) << '\n';
    } else if (*isometric) {
      out << (are_isometric(load_space(path), load_space(path2)) ? "true" : "false") << '\n';
    } else if (*analyze) {
      auto x = io::dlps_from_json(io::load_json_file(path));
      out << io::dlps_report_to_json(dlps_ballean_analysis(x)).dump(2) << '\n';
    } else if (*sample) {
      auto x = io::dlps_from_json(io::load_json_file(path));
      emit(io::space_to_json(dlps_sample(x, sample_n, Rational::parse(cut_text))), out_path,
           out);
    } else if (*verify) {
      if (!checks_text.empty()) config.checks = split_labels(checks_text);
      for (const auto& p : replay_paths) config.replay.push_back(load_replay(p));
      config.timing = !no_timing;
      auto report = harness::run_suite(config);
      emit(harness::report_to_json(report), out_path, out);
      if (!report.passed()) {
        err << "verification failed\n";
        return kDomainError;
      }
    } else if (*probe) {
      emit(harness::probe_to_json(harness::probe_q63(config)), out_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const json::exception& e) {
    err << "error: InvalidInput: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace ultraball::cli
