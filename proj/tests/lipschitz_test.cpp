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

#include "dynsteiner/amortized.hpp"
#include "dynsteiner/lipschitz.hpp"
#include "dynsteiner/runner.hpp"
#include "helpers.hpp"

using namespace dynsteiner;
using dynsteiner::testing::line_metric;
using dynsteiner::testing::uniform_metric;

TEST_CASE("defaults carry the analyzed constants") {
  LipschitzConfig cfg;
  CHECK(cfg.case_two_min_edges == 36);
  CHECK(cfg.kill_count == 6);
  CHECK(cfg.invariant_slack == 54);
  CHECK(cfg.churn_bound == 144);
  CHECK(cfg.drop_bound == 17);
  CHECK(cfg.trailing_bound == 55);
}

TEST_CASE("initial forests match the amortized construction") {
  for (std::uint64_t seed : {51, 52}) {
    Trace t = gen_deletion_trace(seed, 9, Geometry::RandomMetric);
    MetricSpace m = MetricSpace::validate(t.init->points, t.init->dists);
    AmortizedDeleter a(m);
    LipschitzDeleter l(m);
    CHECK(a.tree() == l.forest());
    CHECK(l.forest() == l.full_forest());
  }
  LipschitzDeleter single(MetricSpace::validate({3}, {}));
  CHECK(single.forest().empty());
  LipschitzDeleter collinear(line_metric({0, 2, 8, 10}));
  CHECK(collinear.forest_cost() == 10);
}

TEST_CASE("a harmless deletion keeps the clustering edges") {
  LipschitzDeleter d(uniform_metric(6, 2));
  EdgeSet before = d.full_forest();
  LipschitzStep step = d.erase(2);
  CHECK_FALSE(step.case_two);
  CHECK(d.full_forest() == before);
  CHECK(step.full_drop == 0);
}

TEST_CASE("zombies keep low-level edges while high connectors drop out") {
  // tight pair far from a tight pair: deleting one side keeps its pair edge
  // in the output forest but drops the long connector above the new r
  LipschitzDeleter d(line_metric({0, 2, 100, 102}));
  REQUIRE(contains_edge(d.forest(), Edge{2, 3}));
  d.erase(3);
  LipschitzStep step = d.erase(4);
  CHECK_FALSE(step.case_two);
  CHECK(contains_edge(d.forest(), Edge{3, 4}));        // zombie component
  CHECK_FALSE(contains_edge(d.forest(), Edge{2, 3}));  // connector above r
  CHECK(contains_edge(d.full_forest(), Edge{2, 3}));
  CHECK(step.churn == 1);
  CHECK(is_subset(d.forest(), d.full_forest()));
}

TEST_CASE("drastic steps lower thresholds and stay within every bound") {
  // seed chosen so that the 60-vertex run triggers several drastic steps
  Trace t = gen_deletion_trace(7, 60, Geometry::RandomMetric);
  RunOptions opts;
  opts.checks = CheckLevel::Full;
  opts.opt_limit = 0;
  RunResult r = run_trace(t, Algo::Lipschitz, opts);
  CHECK(r.summary.failures == 0);
  CHECK(r.summary.case_two_steps >= 1);
  CHECK(r.summary.invariant_hypothesis_hits >= 1);
  CHECK(r.summary.max_churn <= 144);
  CHECK(r.summary.max_full_drop <= 17);
  CHECK(r.summary.max_full_trailing <= 55);
}

TEST_CASE("drastic steps kill exactly six low-degree zombie clusters") {
  Trace t = gen_deletion_trace(7, 60, Geometry::RandomMetric);
  MetricSpace m = MetricSpace::validate(t.init->points, t.init->dists);
  LipschitzDeleter d(m);
  bool saw_case_two = false;
  for (const Request& r : t.requests) {
    std::vector<int> taus_before;
    for (int i = 0; i < m.size(); ++i) taus_before.push_back(d.states().tau(i));
    LipschitzStep step = d.erase(std::get<DelRequest>(r).id);
    if (!step.case_two) continue;
    saw_case_two = true;
    CHECK(step.killed_clusters.size() == 6);
    bool dropped = false;
    for (const auto& ids : step.killed_clusters)
      for (Vid id : ids) {
        int i = m.index_of(id);
        CHECK(d.states().tau(i) <= step.lstar);
        if (d.states().tau(i) < taus_before[static_cast<std::size_t>(i)])
          dropped = true;
      }
    CHECK(dropped);  // progress: some threshold strictly decreased
    CHECK(step.safety.unsafe.size() <= 17);
  }
  CHECK(saw_case_two);
}

TEST_CASE("lipschitz rejects double deletions") {
  LipschitzDeleter d(uniform_metric(4, 2));
  d.erase(2);
  CHECK_THROWS_AS(d.erase(2), AlreadyDeleted);
  CHECK_THROWS_AS(d.erase(99), UnknownVertex);
}
