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
#include <random>
#include <set>

#include "dynsteiner/hierarchy.hpp"
#include "helpers.hpp"

using namespace dynsteiner;
using dynsteiner::testing::line_metric;
using dynsteiner::testing::random_metric;

namespace {

bool same_levels(const Hierarchy& a, const Hierarchy& b) {
  if (a.s() != b.s() || a.r() != b.r()) return false;
  if (a.edge_levels() != b.edge_levels()) return false;
  for (int l = 0; l <= a.s(); ++l) {
    const auto& ca = a.level(l).clusters;
    const auto& cb = b.level(l).clusters;
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
      if (ca[i].members != cb[i].members || ca[i].tree != cb[i].tree)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("four collinear points cluster in two rounds") {
  MetricSpace m = line_metric({0, 2, 8, 10});
  VertexStates st = VertexStates::initial(m);
  Hierarchy h = Hierarchy::build(m, st);
  h.check_structure(m);

  REQUIRE(h.s() == 3);
  CHECK(h.r() == 3);
  // level 1: {1,2} and {3,4}
  REQUIRE(h.level(1).clusters.size() == 2);
  CHECK(h.level(1).clusters[0].members == std::vector<int>{0, 1});
  CHECK(h.level(1).clusters[1].members == std::vector<int>{2, 3});
  CHECK(h.edges_at(1) == EdgeSet{{0, 1}, {2, 3}});
  // nothing merges at radius 4, the gap of 6 closes at radius 8
  CHECK(h.level(2).clusters.size() == 2);
  CHECK(h.edges_at(2).empty());
  CHECK(h.edges_at(3) == EdgeSet{{1, 2}});
  CHECK(h.level(3).clusters.size() == 1);
  CHECK(h.m_above(1) == 1);
  CHECK(h.m_above(3) == 0);
}

TEST_CASE("a lone vertex gives the trivial hierarchy") {
  MetricSpace m = MetricSpace::validate({9}, {});
  Hierarchy h = Hierarchy::build(m, VertexStates::initial(m));
  CHECK(h.s() == 0);
  CHECK(h.r() == 0);
  CHECK(h.all_edges().empty());
}

TEST_CASE("two close vertices merge while forming level one") {
  MetricSpace m = MetricSpace::validate({1, 2}, {{1, 2, 2}});
  Hierarchy h = Hierarchy::build(m, VertexStates::initial(m));
  CHECK(h.s() == 1);
  CHECK(h.r() == 1);
  CHECK(h.edges_at(1) == EdgeSet{{0, 1}});
}

TEST_CASE("cluster status follows the threshold and the level") {
  Cluster single{{0}, {}, true, 3};
  CHECK(cluster_status(single, 0) == ClusterKind::Alive);
  CHECK(cluster_status(single, 99) == ClusterKind::Alive);

  Cluster zombie{{0}, {}, false, 3};
  for (int l = 0; l < 3; ++l) CHECK(cluster_status(zombie, l) == ClusterKind::Zombie);
  CHECK(cluster_status(zombie, 3) == ClusterKind::Dead);

  Cluster pair{{0, 1}, {{0, 1}}, false, 5};  // taus 0 and 5
  CHECK(cluster_status(pair, 4) == ClusterKind::Zombie);
  CHECK(cluster_status(pair, 5) == ClusterKind::Dead);
}

TEST_CASE("rebuild against the fresh output is a fixpoint") {
  for (std::uint64_t seed : {4, 5, 6}) {
    MetricSpace m = random_metric(seed, 10);
    VertexStates st = VertexStates::initial(m);
    Hierarchy h0 = Hierarchy::build(m, st);
    Hierarchy h1 = Hierarchy::build(m, st, h0);
    CHECK(same_levels(h0, h1));

    // still a fixpoint after a deletion settles into a rebuild output
    st.kill(2);
    Hierarchy h2 = Hierarchy::build(m, st, h1);
    Hierarchy h3 = Hierarchy::build(m, st, h2);
    h2.check_structure(m);
    CHECK(same_levels(h2, h3));
  }
}

TEST_CASE("edges of an all-dead cluster are never reused") {
  // two tight pairs far apart
  MetricSpace m = line_metric({0, 2, 100, 102});
  VertexStates st = VertexStates::initial(m);
  Hierarchy h = Hierarchy::build(m, st);
  REQUIRE(h.level(1).clusters.size() == 2);

  st.kill(2);
  st.kill(3);
  st.lower_tau(2, 0);
  st.lower_tau(3, 0);
  Hierarchy h2 = Hierarchy::build(m, st, h);
  CHECK_FALSE(contains_edge(h2.all_edges(), Edge{2, 3}));
  CHECK(contains_edge(h2.all_edges(), Edge{0, 1}));
  for (int l = 0; l <= h2.s(); ++l) {
    std::vector<int> owner = h2.level(l).owner(4);
    CHECK(owner[2] != owner[3]);  // dead singletons stay apart
  }
}

TEST_CASE("skeletons are forests with the right edge counts") {
  MetricSpace m = line_metric({0, 2, 8, 10});
  Hierarchy h = Hierarchy::build(m, VertexStates::initial(m));

  Skeleton top = h.skeleton(h.s());
  CHECK(top.edges.empty());

  Skeleton base = h.skeleton(0);
  CHECK(base.num_nodes == 4);
  CHECK(static_cast<int>(base.edges.size()) == h.m_above(0));

  Skeleton mid = h.skeleton(1);
  CHECK(mid.num_nodes == 2);
  REQUIRE(mid.edges.size() == 1);
  CHECK(mid.is_forest());

  CHECK_THROWS_AS(h.skeleton(h.s() + 1), LevelOutOfRange);
  CHECK_THROWS_AS(h.skeleton(-1), LevelOutOfRange);
}

TEST_CASE("skeleton edge counts and component drops agree on random inputs") {
  for (std::uint64_t seed : {21, 22, 23}) {
    MetricSpace m = random_metric(seed, 14);
    VertexStates st = VertexStates::initial(m);
    // mixed statuses: kill a few, lower some thresholds
    st.kill(1);
    st.kill(4);
    st.kill(7);
    st.lower_tau(4, 2);
    Hierarchy h = Hierarchy::build(m, st);
    h.check_structure(m);
    for (int l = 0; l <= h.s(); ++l) {
      Skeleton sk = h.skeleton(l);
      CHECK(sk.is_forest());
      CHECK(static_cast<int>(sk.edges.size()) == h.m_above(l));
      int drop = static_cast<int>(h.level(l).clusters.size()) -
                 static_cast<int>(h.level(h.s()).clusters.size());
      CHECK(h.m_above(l) == drop);
    }
  }
}

TEST_CASE("merge-loop exit separation holds on random builds") {
  for (std::uint64_t seed : {31, 32}) {
    MetricSpace m = random_metric(seed, 12);
    VertexStates st = VertexStates::initial(m);
    st.kill(3);
    Hierarchy h = Hierarchy::build(m, st);
    for (int L = 1; L <= h.s(); ++L) {
      const auto& cs = h.level(L).clusters;
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          if (!cluster_non_dead(cs[i], L - 1) ||
              !cluster_non_dead(cs[j], L - 1))
            continue;
          Length best = std::numeric_limits<Length>::max();
          for (int u : cs[i].members)
            for (int v : cs[j].members) best = std::min(best, m.at(u, v));
          CHECK(best > (Length{1} << L));
        }
    }
  }
}

TEST_CASE("classify_safe covers the documented cases") {
  // path of three far-apart points, middle one deleted
  MetricSpace m = line_metric({0, 10, 20});
  VertexStates st = VertexStates::initial(m);
  st.kill(1);
  Hierarchy h = Hierarchy::build(m, st);
  REQUIRE(h.s() == 4);
  REQUIRE(h.edges_at(4).size() == 2);

  // no killed zombies: everything is safe
  SafeSplit all_safe = classify_safe(h, 3, {}, {});
  CHECK(all_safe.unsafe.empty());
  CHECK(all_safe.safe.size() == 2);

  // middle singleton is a degree-2 zombie of the level-3 skeleton
  Skeleton sk = h.skeleton(3);
  REQUIRE(sk.num_nodes == 3);
  CHECK(sk.degree[1] == 2);
  std::vector<int> bt = boundary_clusters(sk, {1});
  CHECK(bt == std::vector<int>{0, 2});
  SafeSplit split = classify_safe(h, 3, {1}, bt);
  CHECK(split.unsafe.size() == 2);  // both incident edges, 2 <= 3*1 - 1
  CHECK(split.safe.empty());

  // everything at or below lstar is safe regardless of the endpoints
  SafeSplit high = classify_safe(h, 4, {}, {});
  CHECK(high.unsafe.empty());

  // rejects alive or high-degree picks
  CHECK_THROWS_AS(classify_safe(h, 3, {0}, {1}), PreconditionViolated);
  CHECK_THROWS_AS(classify_safe(h, 3, {1}, {}), PreconditionViolated);
}

TEST_CASE("classify_safe rejects a degree-three zombie") {
  // star: center 4 at distance 10 from three leaves, leaves pairwise 20
  MetricSpace m = MetricSpace::validate(
      {1, 2, 3, 4},
      {{1, 2, 20}, {1, 3, 20}, {2, 3, 20}, {1, 4, 10}, {2, 4, 10}, {3, 4, 10}});
  VertexStates st = VertexStates::initial(m);
  st.kill(3);  // internal index of id 4
  Hierarchy h = Hierarchy::build(m, st);
  REQUIRE(h.s() == 4);
  Skeleton sk = h.skeleton(3);
  REQUIRE(sk.degree[3] == 3);
  std::vector<int> bt = boundary_clusters(sk, {3});
  CHECK_THROWS_AS(classify_safe(h, 3, {3}, bt), PreconditionViolated);
}

TEST_CASE("find_low_degree picks the smallest qualifying nodes") {
  // path of 37 edges, A empty
  std::vector<std::pair<int, int>> path;
  for (int i = 0; i < 37; ++i) path.push_back({i, i + 1});
  std::vector<char> no_a(38, 0);
  CHECK(find_low_degree(38, path, no_a) ==
        std::vector<int>{0, 1, 2, 3, 4, 5});

  // star with 36 leaves, center in A
  std::vector<std::pair<int, int>> star;
  for (int i = 1; i <= 36; ++i) star.push_back({0, i});
  std::vector<char> center_a(37, 0);
  center_a[0] = 1;
  CHECK(find_low_degree(37, star, center_a) ==
        std::vector<int>{1, 2, 3, 4, 5, 6});

  // hypothesis failures
  std::vector<std::pair<int, int>> small(path.begin(), path.begin() + 35);
  CHECK_THROWS_AS(find_low_degree(38, small, no_a), PreconditionViolated);
  std::vector<char> big_a(38, 1);
  CHECK_THROWS_AS(find_low_degree(38, path, big_a), PreconditionViolated);
}

TEST_CASE("find_low_degree agrees with a brute-force scan on random forests") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 20; ++round) {
    // random forest: 60 nodes, attach node i to a random earlier node,
    // skipping some to keep several components
    int n = 60;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) {
      if (rng() % 8 == 0) continue;
      int p = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
      edges.push_back({p, i});
    }
    if (edges.size() < 36) continue;
    std::vector<char> in_a(static_cast<std::size_t>(n), 0);
    int acap = static_cast<int>(edges.size() / 3);
    int acount = 0;
    for (int v = 0; v < n && acount < std::min(acap - 1, 10); ++v)
      if (rng() % 5 == 0) {
        in_a[static_cast<std::size_t>(v)] = 1;
        ++acount;
      }

    std::vector<int> got = find_low_degree(n, edges, in_a);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (auto [a, b] : edges) {
      ++deg[static_cast<std::size_t>(a)];
      ++deg[static_cast<std::size_t>(b)];
    }
    std::vector<int> want;
    for (int v = 0; v < n && want.size() < 6; ++v)
      if (!in_a[static_cast<std::size_t>(v)] &&
          (deg[static_cast<std::size_t>(v)] == 1 ||
           deg[static_cast<std::size_t>(v)] == 2))
        want.push_back(v);
    CHECK(got == want);
  }
}

TEST_CASE("clustering dumps carry statuses and external ids") {
  MetricSpace m = line_metric({0, 2, 8, 10});
  VertexStates st = VertexStates::initial(m);
  st.kill(3);
  Hierarchy h = Hierarchy::build(m, st);
  nlohmann::json j = h.dump(m);
  CHECK(j["r"].get<int>() == h.r());
  CHECK(j["s"].get<int>() == h.s());
  CHECK(j["levels"].size() == static_cast<std::size_t>(h.s() + 1));
  bool saw_zombie = false;
  for (const auto& lvl : j["levels"])
    for (const auto& c : lvl["clusters"])
      if (c["status"] == "zombie") saw_zombie = true;
  CHECK(saw_zombie);
}
