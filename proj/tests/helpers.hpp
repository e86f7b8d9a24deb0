// Copyright 2026 The dynsteiner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <vector>

#include "dynsteiner/metric.hpp"
#include "dynsteiner/trace.hpp"

namespace dynsteiner::testing {

// Points 1..n on a line at the given positions, distance = |difference|.
inline MetricSpace line_metric(const std::vector<Length>& pos) {
  std::vector<Vid> points;
  std::vector<DistEntry> dists;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    points.push_back(static_cast<Vid>(i + 1));
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      dists.push_back({static_cast<Vid>(i + 1), static_cast<Vid>(j + 1),
                       std::abs(pos[j] - pos[i])});
  }
  return MetricSpace::validate(points, dists);
}

// All pairwise distances equal.
inline MetricSpace uniform_metric(int n, Length d) {
  std::vector<Vid> points;
  std::vector<DistEntry> dists;
  for (int i = 1; i <= n; ++i) {
    points.push_back(i);
    for (int j = i + 1; j <= n; ++j) dists.push_back({i, j, d});
  }
  return MetricSpace::validate(points, dists);
}

// Validated metric from a seeded random-metric trace.
inline MetricSpace random_metric(std::uint64_t seed, int n,
                                 Geometry geom = Geometry::RandomMetric) {
  Trace t = gen_deletion_trace(seed, n, geom);
  return MetricSpace::validate(t.init->points, t.init->dists);
}

}  // namespace dynsteiner::testing
