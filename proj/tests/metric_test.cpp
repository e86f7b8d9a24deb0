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

#include <doctest.h>

#include <algorithm>
#include <limits>

#include "dynsteiner/metric.hpp"
#include "dynsteiner/oracle.hpp"
#include "helpers.hpp"

using namespace dynsteiner;
using dynsteiner::testing::line_metric;
using dynsteiner::testing::random_metric;

TEST_CASE("validate accepts a tight triangle and computes tau_max") {
  MetricSpace m =
      MetricSpace::validate({1, 2, 3}, {{1, 2, 2}, {2, 3, 2}, {1, 3, 4}});
  CHECK(m.dist(1, 2) == 2);
  CHECK(m.dist(3, 1) == 4);
  CHECK(m.tau_max() == 2);
  CHECK_FALSE(m.rescaled());
}

TEST_CASE("validate rejects a triangle violation") {
  CHECK_THROWS_AS(
      MetricSpace::validate({1, 2, 3}, {{1, 2, 2}, {2, 3, 2}, {1, 3, 5}}),
      TriangleViolation);
}

TEST_CASE("validate rescales metrics with unit distances") {
  MetricSpace m = MetricSpace::validate({1, 2}, {{1, 2, 1}});
  CHECK(m.dist(1, 2) == 2);
  CHECK(m.rescaled());
}

TEST_CASE("validate rejects malformed inputs") {
  CHECK_THROWS_AS(MetricSpace::validate({1, 2}, {{1, 2, 0}}),
                  NonPositiveDistance);
  CHECK_THROWS_AS(MetricSpace::validate({1, 2}, {{1, 2, 3}, {2, 1, 4}}),
                  AsymmetricDistance);
  CHECK_THROWS_AS(MetricSpace::validate({1, 2, 3}, {{1, 2, 3}}), InputError);
  CHECK_THROWS_AS(MetricSpace::validate({1, 1}, {}), DuplicateId);
}

TEST_CASE("extend routes distances to deleted vertices through alive ones") {
  MetricSpace m = MetricSpace::validate({1, 2}, {{1, 2, 4}});
  MetricSpace m2 = m.extend(3, {{2, 3}}, {2});
  CHECK(m2.dist(3, 2) == 3);
  CHECK(m2.dist(3, 1) == 7);  // 3 + 4, single alive path
  CHECK(m2.dist(1, 2) == 4);
}

TEST_CASE("extend takes the minimum over all alive paths") {
  MetricSpace m =
      MetricSpace::validate({1, 2, 4}, {{1, 2, 10}, {1, 4, 4}, {2, 4, 6}});
  std::vector<std::pair<Vid, Length>> to_alive = {{2, 3}, {4, 3}};
  // independent evaluation of the detour rule
  Length expected = std::numeric_limits<Length>::max();
  for (const auto& [a, len] : to_alive)
    expected = std::min(expected, len + m.dist(a, 1));
  MetricSpace m2 = m.extend(5, to_alive, {2, 4});
  CHECK(expected == 7);
  CHECK(m2.dist(5, 1) == expected);
}

TEST_CASE("extend rejects payloads naming non-alive vertices") {
  MetricSpace m = MetricSpace::validate({1, 2}, {{1, 2, 4}});
  CHECK_THROWS_AS(m.extend(3, {{1, 2}, {2, 3}}, {2}), UnknownAliveVertex);
  CHECK_THROWS_AS(m.extend(3, {}, {2}), InputError);  // missing coverage
  CHECK_THROWS_AS(m.extend(2, {{2, 3}}, {2}), DuplicateId);
}

TEST_CASE("extend keeps old distances and leaves an alive nearest vertex") {
  for (std::uint64_t seed : {1, 2, 3}) {
    Trace t = gen_deletion_trace(seed, 9, Geometry::RandomMetric);
    MetricSpace ground = MetricSpace::validate(t.init->points, t.init->dists);
    std::vector<Vid> base_ids(ground.ids().begin(), ground.ids().end() - 1);
    std::vector<DistEntry> base_d;
    for (std::size_t i = 0; i < base_ids.size(); ++i)
      for (std::size_t j = i + 1; j < base_ids.size(); ++j)
        base_d.push_back({base_ids[i], base_ids[j],
                          ground.dist(base_ids[i], base_ids[j])});
    MetricSpace base = MetricSpace::validate(base_ids, base_d);

    std::vector<Vid> alive = {base_ids[0], base_ids[3], base_ids[5]};
    Vid fresh = ground.ids().back();
    std::vector<std::pair<Vid, Length>> payload;
    for (Vid a : alive) payload.push_back({a, ground.dist(fresh, a)});
    MetricSpace ext = base.extend(fresh, payload, alive);

    for (Vid u : base_ids)
      for (Vid v : base_ids) CHECK(ext.dist(u, v) == base.dist(u, v));
    ext.check_triangle();

    Length best = std::numeric_limits<Length>::max();
    for (Vid u : base_ids) best = std::min(best, ext.dist(fresh, u));
    bool alive_min = false;
    for (Vid a : alive)
      if (ext.dist(fresh, a) == best) alive_min = true;
    CHECK(alive_min);
  }
}

TEST_CASE("mst handles singletons and pairs") {
  MetricSpace m =
      MetricSpace::validate({1, 2, 7}, {{1, 2, 6}, {1, 7, 9}, {2, 7, 9}});
  CHECK(mst(m, {7}).empty());
  EdgeSet pair = mst(m, {1, 2});
  REQUIRE(pair.size() == 1);
  CHECK(pair[0] == Edge{1, 2});
  CHECK(m.cost(pair) == 6);
  CHECK_THROWS_AS(mst(m, {}), EmptySubset);
}

TEST_CASE("mst of collinear points matches exhaustive search") {
  MetricSpace m = line_metric({0, 2, 8, 10});
  std::vector<Vid> all = {1, 2, 3, 4};

  // brute force over all 3-edge subsets that span the four points
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      pairs.push_back({all[i], all[j]});
  Length best = std::numeric_limits<Length>::max();
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a + 1; b < pairs.size(); ++b)
      for (std::size_t c = b + 1; c < pairs.size(); ++c) {
        EdgeSet t = {pairs[a], pairs[b], pairs[c]};
        sort_unique(t);
        std::vector<int> par = {0, 1, 2, 3, 4};
        auto find = [&](int x) {
          while (par[static_cast<std::size_t>(x)] != x)
            x = par[static_cast<std::size_t>(x)] =
                par[static_cast<std::size_t>(par[static_cast<std::size_t>(x)])];
          return x;
        };
        bool ok = true;
        for (const Edge& e : t) {
          int ra = find(static_cast<int>(e.u));
          int rb = find(static_cast<int>(e.v));
          if (ra == rb) ok = false;
          par[static_cast<std::size_t>(rb)] = ra;
        }
        if (ok && find(1) == find(2) && find(2) == find(3) &&
            find(3) == find(4))
          best = std::min(best, m.cost(t));
      }
  CHECK(best == 10);

  EdgeSet t = mst(m, all);
  CHECK(m.cost(t) == best);
  std::vector<Length> lens;
  for (const Edge& e : t) lens.push_back(m.dist(e.u, e.v));
  std::sort(lens.begin(), lens.end());
  CHECK(lens == std::vector<Length>{2, 2, 6});
}

TEST_CASE("mst stays within twice the exact Steiner cost") {
  for (std::uint64_t seed : {11, 12, 13, 14}) {
    MetricSpace m = random_metric(seed, 7);
    std::vector<Vid> terms = {1, 3, 6};
    OracleResult opt = opt_steiner_enumerate(m, terms);
    CHECK(mst_cost(m, terms) <= 2 * opt.cost);
  }
}

TEST_CASE("vertex states enforce the threshold discipline") {
  MetricSpace m = line_metric({0, 2, 8, 10});
  VertexStates st = VertexStates::initial(m);
  CHECK(st.tau_max() == 4);
  CHECK(st.alive_count() == 4);
  st.check_consistent();
  CHECK_THROWS_AS(st.lower_tau(0, 1), InvariantFailure);  // still alive
  st.kill(0);
  st.lower_tau(0, 1);
  CHECK(st.tau(0) == 1);
  st.lower_tau(0, 3);  // never raises
  CHECK(st.tau(0) == 1);
  st.check_consistent();
}
