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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ultraball/ballean.hpp"
#include "ultraball/dlps.hpp"
#include "ultraball/error.hpp"
#include "ultraball/rational.hpp"
#include "ultraball/space.hpp"

// JSON forms:
//   space:     {"labels": [string], "matrix": [[string | int]]}
//   violation: {"axiom": string, "witness": [label]}
//   ballean:   {"balls": [[label]], "hausdorff": [[string]]}
//   dlps:      {"points": [string], "zero": bool, "tails": [{"first", "ratio"}]}
// Matrix entries are integers, exact decimals ("1.5") or fractions ("3/2").

namespace ultraball::io {

using nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(ErrorKind::InvalidInput,
              "expected an integer or a string rational, got " + j.dump());
}

inline json rational_to_json(const Rational& r) { return r.to_string(); }

/// Labels and matrix as read, not yet validated.
struct RawSpace {
  std::vector<std::string> labels;
  DistanceMatrix matrix;
};

inline RawSpace raw_space_from_json(const json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("labels")) {
    throw Error(ErrorKind::InvalidInput, "space JSON needs \"labels\" and \"matrix\"");
  }
  RawSpace raw;
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw Error(ErrorKind::InvalidInput, "labels must be strings");
    raw.labels.push_back(l.get<std::string>());
  }
  if (!j.at("matrix").is_array()) throw Error(ErrorKind::InvalidInput, "matrix must be an array");
  for (const auto& row : j.at("matrix")) {
    if (!row.is_array()) throw Error(ErrorKind::InvalidInput, "matrix rows must be arrays");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    raw.matrix.push_back(std::move(r));
  }
  return raw;
}

inline json raw_space_to_json(const RawSpace& raw) {
  json m = json::array();
  for (const auto& row : raw.matrix) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    m.push_back(std::move(r));
  }
  return {{"labels", raw.labels}, {"matrix", std::move(m)}};
}

inline json space_to_json(const FiniteUltrametricSpace& s) {
  return raw_space_to_json({s.labels(), s.matrix()});
}

inline json violation_to_json(const Violation& v, const std::vector<std::string>& labels) {
  json w = json::array();
  for (std::size_t i : v.witness) w.push_back(labels.at(i));
  return {{"axiom", std::string(to_string(v.axiom))}, {"witness", std::move(w)}};
}

inline Validation validate(const RawSpace& raw) {
  return validate_ultrametric(raw.matrix, raw.labels);
}

inline std::vector<std::string> member_labels(const FiniteUltrametricSpace& s,
                                              const PointSet& members) {
  std::vector<std::string> out;
  for (std::size_t x : members) out.push_back(s.label(x));
  return out;
}

inline json ball_to_json(const FiniteUltrametricSpace& s, const Ball& b) {
  return {{"members", member_labels(s, b.members)}, {"diameter", rational_to_json(b.diameter)}};
}

inline json ballean_to_json(const Ballean& ballean, HausdorffOptions options = {}) {
  json balls = json::array();
  for (const Ball& b : ballean.balls()) balls.push_back(member_labels(ballean.host(), b.members));
  auto [labels, dist] = ballean_matrix(ballean, options);
  json h = json::array();
  for (const auto& row : dist) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    h.push_back(std::move(r));
  }
  return {{"balls", std::move(balls)}, {"hausdorff", std::move(h)}};
}

inline DlpsSpace dlps_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "DLPS JSON must be an object");
  std::vector<Rational> points;
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) points.push_back(rational_from_json(p));
  }
  bool zero = false;
  if (j.contains("zero")) {
    if (!j.at("zero").is_boolean()) throw Error(ErrorKind::InvalidInput, "\"zero\" must be a boolean");
    zero = j.at("zero").get<bool>();
  }
  std::vector<GeometricTail> tails;
  if (j.contains("tails")) {
    for (const auto& t : j.at("tails")) {
      if (!t.is_object() || !t.contains("first") || !t.contains("ratio")) {
        throw Error(ErrorKind::InvalidInput, "tail needs \"first\" and \"ratio\"");
      }
      tails.push_back({rational_from_json(t.at("first")), rational_from_json(t.at("ratio"))});
    }
  }
  return DlpsSpace::create(std::move(points), zero, std::move(tails));
}

inline json dlps_to_json(const DlpsSpace& x) {
  json points = json::array();
  for (const auto& p : x.finite_points()) points.push_back(rational_to_json(p));
  json tails = json::array();
  for (const auto& t : x.tails()) {
    tails.push_back({{"first", rational_to_json(t.first)}, {"ratio", rational_to_json(t.ratio)}});
  }
  return {{"points", std::move(points)}, {"zero", x.has_zero()}, {"tails", std::move(tails)}};
}

inline json dlps_report_to_json(const DlpsBalleanReport& r) {
  json acc = json::array();
  for (const auto& v : r.point_acc) acc.push_back(rational_to_json(v));
  json bacc = json::array();
  for (const auto& b : r.ballean_acc) bacc.push_back(b.to_string());
  json j;
  j["acc"] = std::move(acc);
  j["discrete"] = r.point_discrete;
  j["metrically_discrete"] = r.point_metrically_discrete;
  j["locally_finite"] = r.point_locally_finite;
  j["boundedly_compact"] = r.bounded_finiteness_criterion;
  j["point_space_boundedly_compact"] = r.point_boundedly_compact;
  j["ballean_discrete"] = r.ballean_discrete;
  j["ballean_acc"] = std::move(bacc);
  j["ballean_metrically_discrete"] = r.ballean_metrically_discrete;
  j["ballean_locally_finite"] = r.ballean_locally_finite;
  j["ballean_boundedly_compact"] = r.ballean_boundedly_compact;
  j["zero_in_space"] = r.zero_hypothesis;
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ultraball::io
