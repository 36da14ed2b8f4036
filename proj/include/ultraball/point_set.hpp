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
#include <cstddef>
#include <iterator>
#include <span>
#include <vector>

namespace ultraball {

/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<std::size_t>;

inline PointSet normalized(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool is_normalized(std::span<const std::size_t> s) {
  return std::adjacent_find(s.begin(), s.end(),
                            [](std::size_t a, std::size_t b) { return a >= b; }) ==
         s.end();
}

inline PointSet set_union(std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  PointSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline PointSet set_intersection(std::span<const std::size_t> a,
                                 std::span<const std::size_t> b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

/// True when every element of `inner` is in `outer`.
inline bool contains_all(std::span<const std::size_t> outer,
                         std::span<const std::size_t> inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

inline bool intersects(std::span<const std::size_t> a,
                       std::span<const std::size_t> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

inline PointSet all_points(std::size_t n) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace ultraball
