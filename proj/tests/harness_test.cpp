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

#include <sstream>

#include "dynsteiner/runner.hpp"
#include "dynsteiner/trace.hpp"

using namespace dynsteiner;

namespace {

std::string trace_bytes(const Trace& t) {
  std::ostringstream o;
  write_trace(o, t);
  return o.str();
}

}  // namespace

TEST_CASE("generation is deterministic byte for byte") {
  CHECK(trace_bytes(gen_deletion_trace(1, 4, Geometry::Grid)) ==
        trace_bytes(gen_deletion_trace(1, 4, Geometry::Grid)));
  CHECK(trace_bytes(gen_mixed_trace(9, 25, Geometry::RandomMetric, 400)) ==
        trace_bytes(gen_mixed_trace(9, 25, Geometry::RandomMetric, 400)));
  CHECK(trace_bytes(gen_deletion_trace(1, 4, Geometry::Grid)) !=
        trace_bytes(gen_deletion_trace(2, 4, Geometry::Grid)));
}

TEST_CASE("closure repair replaces long detours by shortest paths") {
  std::vector<std::vector<Length>> raw = {
      {0, 2, 9}, {2, 0, 2}, {9, 2, 0}};
  auto fixed = closure_repair(raw);
  CHECK(fixed[0][2] == 4);
  CHECK(fixed[0][1] == 2);
}

TEST_CASE("generated traces validate and round-trip through JSON lines") {
  for (std::uint64_t seed : {7, 8}) {
    Trace t = gen_mixed_trace(seed, 30, Geometry::RandomMetric, 400);
    check_trace(t);
    std::string bytes = trace_bytes(t);
    std::istringstream in(bytes);
    Trace back = read_trace(in);
    CHECK(trace_bytes(back) == bytes);

    Trace d = gen_deletion_trace(seed, 12, Geometry::Grid);
    check_trace(d);
    std::istringstream in2(trace_bytes(d));
    Trace back2 = read_trace(in2);
    CHECK(trace_bytes(back2) == trace_bytes(d));
  }
}

TEST_CASE("malformed traces are rejected") {
  SUBCASE("delete before add") {
    Trace t;
    t.requests.push_back(DelRequest{3});
    CHECK_THROWS_AS(check_trace(t), TraceError);
  }
  SUBCASE("double delete") {
    Trace t;
    t.requests.push_back(AddRequest{1, {}});
    t.requests.push_back(DelRequest{1});
    t.requests.push_back(DelRequest{1});
    CHECK_THROWS_AS(check_trace(t), TraceError);
  }
  SUBCASE("wrong alive coverage in an add payload") {
    Trace t;
    t.requests.push_back(AddRequest{1, {}});
    t.requests.push_back(AddRequest{2, {}});  // missing the distance to 1
    CHECK_THROWS_AS(check_trace(t), TraceError);
  }
  SUBCASE("add after an init prologue") {
    Trace t = gen_deletion_trace(1, 4, Geometry::Grid);
    t.requests.push_back(AddRequest{99, {}});
    CHECK_THROWS_AS(check_trace(t), TraceError);
  }
  SUBCASE("init goes to the deletion algorithms only") {
    Trace t = gen_mixed_trace(1, 10, Geometry::Grid, 300);
    CHECK_THROWS_AS(run_trace(t, Algo::Amortized), TraceError);
    Trace d = gen_deletion_trace(1, 4, Geometry::Grid);
    CHECK_THROWS_AS(run_trace(d, Algo::Dynamic), TraceError);
  }
}

TEST_CASE("csv reports round-trip") {
  CHECK(report_csv({}) == "t,algo,cost,mst,opt,lb,churn,swaps,splices,zt,fails\n");

  StepReport one;
  one.t = 1;
  one.algo = Algo::Amortized;
  one.cost = 12;
  one.mst = 10;
  one.opt = 9;
  one.lb_quarters = 7;  // prints as 1.75
  one.churn = 3;
  one.zt = 2;
  std::string csv = report_csv({one});
  CHECK(csv ==
        "t,algo,cost,mst,opt,lb,churn,swaps,splices,zt,fails\n"
        "1,amortized,12,10,9,1.75,3,0,0,2,0\n");

  StepReport two;
  two.t = 2;
  two.algo = Algo::Dynamic;
  two.cost = 40;
  two.mst = 11;
  two.swaps = 4;
  two.splices = 1;
  two.failures = {"boom"};
  std::vector<StepReport> rows = {one, two};
  std::vector<StepReport> back = parse_report_csv(report_csv(rows));
  REQUIRE(back.size() == 2);
  CHECK(back[0] == rows[0]);
  CHECK(back[1] == rows[1]);
}

TEST_CASE("runs are deterministic and honor the documented budgets") {
  Trace t = gen_deletion_trace(5, 6, Geometry::RandomMetric);
  RunOptions opts;
  opts.checks = CheckLevel::Full;
  RunResult a1 = run_trace(t, Algo::Amortized, opts);
  RunResult a2 = run_trace(t, Algo::Amortized, opts);
  CHECK(report_csv(a1.steps) == report_csv(a2.steps));
  CHECK(a1.summary.total_churn <= 18);
  CHECK(a1.summary.failures == 0);

  RunResult l = run_trace(t, Algo::Lipschitz, opts);
  CHECK(l.summary.max_churn <= 144);
  CHECK(l.summary.failures == 0);

  Trace mx = gen_mixed_trace(5, 40, Geometry::RandomMetric, 400);
  RunResult dy = run_trace(mx, Algo::Dynamic, opts);
  CHECK(dy.summary.failures == 0);
  CHECK(dy.summary.total_swaps + dy.summary.total_splices <= 80);
  nlohmann::json j = summary_json(dy);
  CHECK(j["algo"] == "dynamic");
  CHECK(j["rows"].size() == 40);
}

TEST_CASE("level dumps expose goodness per level") {
  Trace t = gen_deletion_trace(3, 10, Geometry::RandomMetric);
  RunOptions opts;
  opts.level_dump = true;
  RunResult r = run_trace(t, Algo::Lipschitz, opts);
  REQUIRE(!r.steps.empty());
  CHECK(!r.steps.front().levels.empty());
  nlohmann::json j = summary_json(r);
  CHECK(j["rows"][0].contains("levels"));
}
