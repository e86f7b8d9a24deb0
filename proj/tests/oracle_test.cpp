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

#include <random>

#include "dynsteiner/oracle.hpp"
#include "helpers.hpp"

using namespace dynsteiner;
using dynsteiner::testing::random_metric;
using dynsteiner::testing::uniform_metric;

namespace {

std::mt19937_64 pick_rng(123);

std::vector<Vid> random_subset(const MetricSpace& m, std::size_t k) {
  std::vector<Vid> ids = m.ids();
  for (std::size_t i = ids.size() - 1; i > 0; --i)
    std::swap(ids[i], ids[pick_rng() % (i + 1)]);
  ids.resize(k);
  return ids;
}

}  // namespace

TEST_CASE("a cheap hub beats the direct triangle") {
  // hub 4 at distance 2 from each of 1,2,3; terminals pairwise at 4
  MetricSpace m = MetricSpace::validate(
      {1, 2, 3, 4},
      {{1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {1, 4, 2}, {2, 4, 2}, {3, 4, 2}});
  OracleResult enumd = opt_steiner_enumerate(m, {1, 2, 3});
  CHECK(enumd.cost == 6);
  OracleResult dw = opt_steiner(m, {1, 2, 3});
  CHECK(dw.cost == 6);
  CHECK(dw.method == OracleMethod::DreyfusWagner);
  CHECK(dw.tree.size() == 3);  // three spokes through the hub
  CHECK(m.cost(dw.tree) == 6);
}

TEST_CASE("degenerate terminal sets") {
  MetricSpace m = uniform_metric(4, 6);
  CHECK(opt_steiner(m, {2}).cost == 0);
  CHECK(opt_steiner(m, {2}).tree.empty());
  CHECK(opt_steiner(m, {1, 3}).cost == 6);  // metric closure: direct edge
  CHECK(opt_steiner(m, {1, 3, 3}).cost == 6);
  std::vector<Vid> too_many = {1, 2, 3, 4};
  CHECK_THROWS_AS(opt_steiner(m, too_many, 3), TooManyTerminals);
}

TEST_CASE("dynamic program equals enumeration on small instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    int n = 4 + static_cast<int>(seed % 5);  // 4..8
    MetricSpace m = random_metric(seed, n,
                                  seed % 2 ? Geometry::Grid
                                           : Geometry::RandomMetric);
    std::size_t k = 2 + static_cast<std::size_t>(pick_rng() % (n - 1));
    std::vector<Vid> terms = random_subset(m, k);
    OracleResult a = opt_steiner(m, terms);
    OracleResult b = opt_steiner_enumerate(m, terms);
    CHECK(a.cost == b.cost);
    CHECK(m.cost(a.tree) == a.cost);
    CHECK(m.cost(b.tree) == b.cost);
  }
}

TEST_CASE("dual lower bound evaluates the level sum in quarters") {
  // single non-dead cluster at every level contributes nothing
  MetricSpace one = MetricSpace::validate({5}, {});
  Hierarchy h1 = Hierarchy::build(one, VertexStates::initial(one));
  CHECK(dual_lower_bound_quarters(h1) == 0);

  // four mutually distant points: counts (4, 4, 1) over levels 0..2
  MetricSpace m = uniform_metric(4, 3);
  Hierarchy h = Hierarchy::build(m, VertexStates::initial(m));
  REQUIRE(h.s() == 2);
  CHECK(h.nondead_count(0) == 4);
  CHECK(h.nondead_count(1) == 4);
  CHECK(h.nondead_count(2) == 1);
  CHECK(dual_lower_bound_quarters(h) == 3);  // 1/4 + 1/2, in quarters
}

TEST_CASE("the lower bound never exceeds the optimum on good clusterings") {
  for (std::uint64_t seed : {71, 72, 73, 74}) {
    MetricSpace m = random_metric(seed, 8);
    Hierarchy h = Hierarchy::build(m, VertexStates::initial(m));
    OracleResult opt = opt_steiner(m, m.ids());
    CHECK(dual_lower_bound_quarters(h) <= 4 * opt.cost);
  }
}
