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

#include "dynsteiner/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace dynsteiner {

namespace {

constexpr Length kInf = std::numeric_limits<Length>::max();

Length pow2_len(int k) {
  if (k >= 62) return kInf;
  return Length{1} << k;
}

// Closest vertex pair between two clusters, lexicographically smallest on
// ties so merges are reproducible.
struct PairBest {
  Length len = kInf;
  int eu = -1;
  int ev = -1;

  bool beats(const PairBest& o) const {
    if (len != o.len) return len < o.len;
    if (eu != o.eu) return eu < o.eu;
    return ev < o.ev;
  }
};

struct Builder {
  const MetricSpace& m;
  const VertexStates& st;
  int n;
  std::vector<char> active;
  std::vector<std::vector<int>> members;
  std::vector<EdgeSet> trees;
  std::vector<char> any_alive;
  std::vector<int> max_tau;
  std::vector<int> owner;
  std::vector<PairBest> cd;
  std::vector<std::pair<Edge, int>> edge_levels;

  Builder(const MetricSpace& metric, const VertexStates& states)
      : m(metric), st(states), n(metric.size()) {
    active.assign(static_cast<std::size_t>(n), 1);
    members.resize(static_cast<std::size_t>(n));
    trees.resize(static_cast<std::size_t>(n));
    any_alive.resize(static_cast<std::size_t>(n));
    max_tau.resize(static_cast<std::size_t>(n));
    owner.resize(static_cast<std::size_t>(n));
    cd.assign(static_cast<std::size_t>(n) * n, PairBest{});
    for (int i = 0; i < n; ++i) {
      members[static_cast<std::size_t>(i)] = {i};
      any_alive[static_cast<std::size_t>(i)] = st.alive(i) ? 1 : 0;
      max_tau[static_cast<std::size_t>(i)] = st.tau(i);
      owner[static_cast<std::size_t>(i)] = i;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          at(i, j) = PairBest{m.at(i, j), std::min(i, j), std::max(i, j)};
  }

  PairBest& at(int i, int j) { return cd[static_cast<std::size_t>(i) * n + j]; }

  bool non_dead(int slot, int level) const {
    return any_alive[static_cast<std::size_t>(slot)] ||
           max_tau[static_cast<std::size_t>(slot)] > level;
  }

  int count_nondead(int level) const {
    int c = 0;
    for (int i = 0; i < n; ++i)
      if (active[static_cast<std::size_t>(i)] && non_dead(i, level)) ++c;
    return c;
  }

  // Slot ids equal the minimum member, so merging keeps the smaller slot.
  void merge(int a, int b, int eu, int ev, int record_level) {
    if (a > b) std::swap(a, b);
    auto ai = static_cast<std::size_t>(a);
    auto bi = static_cast<std::size_t>(b);
    edge_levels.push_back({make_edge(eu, ev), record_level});

    std::vector<int> merged;
    merged.reserve(members[ai].size() + members[bi].size());
    std::merge(members[ai].begin(), members[ai].end(), members[bi].begin(),
               members[bi].end(), std::back_inserter(merged));
    for (int v : members[bi]) owner[static_cast<std::size_t>(v)] = a;
    members[ai] = std::move(merged);
    members[bi].clear();

    EdgeSet t = edge_union(trees[ai], trees[bi]);
    insert_edge(t, make_edge(eu, ev));
    trees[ai] = std::move(t);
    trees[bi].clear();

    any_alive[ai] = any_alive[ai] || any_alive[bi];
    max_tau[ai] = std::max(max_tau[ai], max_tau[bi]);
    active[bi] = 0;

    for (int x = 0; x < n; ++x) {
      if (!active[static_cast<std::size_t>(x)] || x == a) continue;
      const PairBest& viaB = at(b, x);
      if (viaB.beats(at(a, x))) at(a, x) = viaB;
      at(x, a) = at(a, x);
    }
  }

  // Greedy phase: repeatedly merge the closest status-level-non-dead pair
  // within `radius`, smallest (distance, slot, slot) first.
  void greedy(int status_level, Length radius, int record_level) {
    for (;;) {
      int bi = -1, bj = -1;
      PairBest best;
      for (int i = 0; i < n; ++i) {
        if (!active[static_cast<std::size_t>(i)] || !non_dead(i, status_level))
          continue;
        for (int j = i + 1; j < n; ++j) {
          if (!active[static_cast<std::size_t>(j)] ||
              !non_dead(j, status_level))
            continue;
          const PairBest& p = at(i, j);
          if (p.len > radius) continue;
          if (bi < 0 || p.len < best.len) {
            best = p;
            bi = i;
            bj = j;
          }
          // equal distance: (i, j) scan order is already lexicographic
        }
      }
      if (bi < 0) return;
      merge(bi, bj, best.eu, best.ev, record_level);
    }
  }

  // Reuse phase: re-add old edges (levels <= record_level, canonical order)
  // whenever they join two distinct status-level-non-dead clusters.
  void reuse(const std::vector<std::pair<Edge, int>>& old_edges,
             int status_level, int record_level) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& [e, lvl] : old_edges) {
        if (lvl > record_level) break;  // sorted by level
        int a = owner[static_cast<std::size_t>(e.u)];
        int b = owner[static_cast<std::size_t>(e.v)];
        if (a == b) continue;
        if (!non_dead(a, status_level) || !non_dead(b, status_level)) continue;
        merge(a, b, static_cast<int>(e.u), static_cast<int>(e.v), record_level);
        progress = true;
      }
    }
  }

  Clustering snapshot() const {
    Clustering c;
    for (int i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      Cluster cl;
      cl.members = members[static_cast<std::size_t>(i)];
      cl.tree = trees[static_cast<std::size_t>(i)];
      cl.any_alive = any_alive[static_cast<std::size_t>(i)] != 0;
      cl.max_tau = max_tau[static_cast<std::size_t>(i)];
      c.clusters.push_back(std::move(cl));
    }
    return c;
  }
};

}  // namespace

ClusterKind cluster_status(const Cluster& c, int level) {
  if (c.any_alive) return ClusterKind::Alive;
  if (c.max_tau > level) return ClusterKind::Zombie;
  return ClusterKind::Dead;
}

std::string to_string(ClusterKind k) {
  switch (k) {
    case ClusterKind::Alive:
      return "alive";
    case ClusterKind::Zombie:
      return "zombie";
    case ClusterKind::Dead:
      return "dead";
  }
  return "?";
}

std::vector<int> Clustering::owner(int n) const {
  std::vector<int> o(static_cast<std::size_t>(n), -1);
  for (std::size_t ci = 0; ci < clusters.size(); ++ci)
    for (int v : clusters[ci].members)
      o[static_cast<std::size_t>(v)] = static_cast<int>(ci);
  return o;
}

bool Skeleton::is_forest() const {
  std::vector<int> parent(static_cast<std::size_t>(num_nodes));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(rb)] = ra;
  }
  return true;
}

Hierarchy Hierarchy::build(const MetricSpace& m, const VertexStates& st) {
  Builder b(m, st);
  Hierarchy h;
  h.levels_.push_back(b.snapshot());
  if (b.count_nondead(0) > 1) {
    int guard = m.tau_max() + 3;
    int l = 0;
    for (; l < guard; ++l) {
      b.greedy(l, pow2_len(l + 1), l + 1);
      h.levels_.push_back(b.snapshot());
      if (b.count_nondead(l + 1) <= 1) break;
    }
    if (l == guard) throw InvariantFailure("clustering did not converge");
  }
  h.edge_levels_ = std::move(b.edge_levels);
  h.finalize(m);
  return h;
}

Hierarchy Hierarchy::build(const MetricSpace& m, const VertexStates& st,
                           const Hierarchy& old) {
  Builder b(m, st);
  Hierarchy h;
  h.levels_.push_back(b.snapshot());
  if (b.count_nondead(0) > 1) {
    int guard = m.tau_max() + 3;
    int l = 0;
    for (; l < guard; ++l) {
      b.reuse(old.edge_levels_, l, l + 1);
      b.greedy(l, pow2_len(l), l + 1);
      h.levels_.push_back(b.snapshot());
      if (b.count_nondead(l + 1) <= 1) break;
    }
    if (l == guard) throw InvariantFailure("clustering did not converge");
  }
  h.edge_levels_ = std::move(b.edge_levels);
  h.finalize(m);
  return h;
}

void Hierarchy::finalize(const MetricSpace&) {
  std::sort(edge_levels_.begin(), edge_levels_.end(),
            [](const auto& a, const auto& b) {
              return a.second != b.second ? a.second < b.second
                                          : a.first < b.first;
            });
  s_ = num_levels() - 1;
  m_.assign(static_cast<std::size_t>(s_) + 1, 0);
  for (const auto& [e, lvl] : edge_levels_) ++m_[static_cast<std::size_t>(lvl)];

  r_ = 0;
  for (int l = 0; l <= s_; ++l) {
    int alive = 0;
    for (const Cluster& c : levels_[static_cast<std::size_t>(l)].clusters)
      alive += c.any_alive ? 1 : 0;
    if (alive == 1) {
      r_ = l;
      break;
    }
  }
}

const Clustering& Hierarchy::level(int l) const {
  if (l < 0 || l >= num_levels()) throw LevelOutOfRange(l);
  return levels_[static_cast<std::size_t>(l)];
}

const Clustering& Hierarchy::level_clamped(int l) const {
  if (l < 0) throw LevelOutOfRange(l);
  return levels_[static_cast<std::size_t>(std::min(l, s_))];
}

EdgeSet Hierarchy::edges_at(int l) const {
  EdgeSet out;
  for (const auto& [e, lvl] : edge_levels_)
    if (lvl == l) out.push_back(e);
  sort_unique(out);
  return out;
}

EdgeSet Hierarchy::edges_cumulative(int l) const {
  EdgeSet out;
  for (const auto& [e, lvl] : edge_levels_)
    if (lvl <= l) out.push_back(e);
  sort_unique(out);
  return out;
}

EdgeSet Hierarchy::all_edges() const {
  EdgeSet out;
  out.reserve(edge_levels_.size());
  for (const auto& [e, lvl] : edge_levels_) out.push_back(e);
  sort_unique(out);
  return out;
}

int Hierarchy::m_at(int l) const {
  if (l < 0 || l > s_) return 0;
  return m_[static_cast<std::size_t>(l)];
}

int Hierarchy::m_above(int l) const {
  if (l < 0) throw LevelOutOfRange(l);
  int total = 0;
  for (int j = l + 1; j <= s_; ++j) total += m_[static_cast<std::size_t>(j)];
  return total;
}

int Hierarchy::alive_count(int l) const {
  int c = 0;
  for (const Cluster& cl : level_clamped(l).clusters) c += cl.any_alive ? 1 : 0;
  return c;
}

int Hierarchy::zombie_count(int l) const {
  int c = 0;
  for (const Cluster& cl : level_clamped(l).clusters)
    c += cluster_status(cl, l) == ClusterKind::Zombie ? 1 : 0;
  return c;
}

int Hierarchy::nondead_count(int l) const {
  int c = 0;
  for (const Cluster& cl : level_clamped(l).clusters)
    c += cluster_status(cl, l) != ClusterKind::Dead ? 1 : 0;
  return c;
}

Skeleton Hierarchy::skeleton(int l) const {
  const Clustering& base = level(l);
  int n = 0;
  for (const Cluster& c : base.clusters) n += static_cast<int>(c.members.size());
  std::vector<int> owner = base.owner(n);

  Skeleton sk;
  sk.level = l;
  sk.num_nodes = static_cast<int>(base.clusters.size());
  sk.degree.assign(static_cast<std::size_t>(sk.num_nodes), 0);
  for (const auto& [e, lvl] : edge_levels_) {
    if (lvl <= l) continue;
    int a = owner[static_cast<std::size_t>(e.u)];
    int b = owner[static_cast<std::size_t>(e.v)];
    if (a == b)
      throw InvariantFailure("edge above level " + std::to_string(l) +
                             " inside one cluster");
    sk.edges.push_back({std::min(a, b), std::max(a, b)});
    ++sk.degree[static_cast<std::size_t>(a)];
    ++sk.degree[static_cast<std::size_t>(b)];
  }
  std::sort(sk.edges.begin(), sk.edges.end());
  return sk;
}

void Hierarchy::check_structure(const MetricSpace& m) const {
  int n = m.size();
  auto fail = [](const std::string& msg) { throw InvariantFailure(msg); };

  const Clustering& base = levels_.front();
  if (static_cast<int>(base.clusters.size()) != n)
    fail("level 0 is not the singleton partition");
  for (const Cluster& c : base.clusters)
    if (c.members.size() != 1 || !c.tree.empty())
      fail("level 0 cluster is not a bare singleton");

  for (int l = 0; l <= s_; ++l) {
    const Clustering& cl = levels_[static_cast<std::size_t>(l)];
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int prev_min = -1;
    for (const Cluster& c : cl.clusters) {
      if (c.members.empty()) fail("empty cluster");
      if (!std::is_sorted(c.members.begin(), c.members.end()))
        fail("cluster members not sorted");
      if (c.min_vertex() <= prev_min) fail("clusters not in canonical order");
      prev_min = c.min_vertex();
      for (int v : c.members) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
          fail("level is not a partition");
        seen[static_cast<std::size_t>(v)] = 1;
      }
      if (c.tree.size() + 1 != c.members.size())
        fail("cluster tree has wrong edge count");
      // spanning and acyclic over the members
      std::vector<int> parent(c.members.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
          x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(
              parent[static_cast<std::size_t>(x)])];
        return x;
      };
      auto pos = [&](Vid v) {
        auto it = std::lower_bound(c.members.begin(), c.members.end(),
                                   static_cast<int>(v));
        if (it == c.members.end() || *it != static_cast<int>(v))
          fail("tree edge leaves the cluster");
        return static_cast<int>(it - c.members.begin());
      };
      for (const Edge& e : c.tree) {
        int a = find(pos(e.u)), b = find(pos(e.v));
        if (a == b) fail("cluster tree has a cycle");
        parent[static_cast<std::size_t>(b)] = a;
      }
    }
    for (int v = 0; v < n; ++v)
      if (!seen[static_cast<std::size_t>(v)]) fail("vertex missing from level");

    if (l > 0) {
      std::vector<int> prev_owner =
          levels_[static_cast<std::size_t>(l - 1)].owner(n);
      for (const Cluster& c : cl.clusters) {
        // refinement: each coarse cluster is a union of finer ones
        std::vector<char> used(
            levels_[static_cast<std::size_t>(l - 1)].clusters.size(), 0);
        std::size_t total = 0;
        for (int v : c.members) used[static_cast<std::size_t>(
            prev_owner[static_cast<std::size_t>(v)])] = 1;
        for (std::size_t ci = 0; ci < used.size(); ++ci)
          if (used[ci])
            total += levels_[static_cast<std::size_t>(l - 1)]
                         .clusters[ci]
                         .members.size();
        if (total != c.members.size())
          fail("coarse cluster is not a union of finer clusters");
        for (std::size_t ci = 0; ci < used.size(); ++ci)
          if (used[ci] &&
              !is_subset(
                  levels_[static_cast<std::size_t>(l - 1)].clusters[ci].tree,
                  c.tree))
            fail("coarse tree does not extend finer trees");
      }
    }

    EdgeSet level_edges;
    for (const Cluster& c : cl.clusters)
      level_edges.insert(level_edges.end(), c.tree.begin(), c.tree.end());
    sort_unique(level_edges);
    if (level_edges != edges_cumulative(l))
      fail("edge levels disagree with cluster trees");
  }

  for (int l = 0; l <= s_; ++l) {
    Skeleton sk = skeleton(l);
    if (!sk.is_forest()) fail("skeleton is not a forest");
    if (static_cast<int>(sk.edges.size()) != m_above(l))
      fail("skeleton edge count mismatch");
  }
}

nlohmann::json Hierarchy::dump(const MetricSpace& m) const {
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 0; l <= s_; ++l) {
    nlohmann::json clusters = nlohmann::json::array();
    for (const Cluster& c : levels_[static_cast<std::size_t>(l)].clusters) {
      nlohmann::json verts = nlohmann::json::array();
      for (int v : c.members) verts.push_back(m.ids()[static_cast<std::size_t>(v)]);
      nlohmann::json tree = nlohmann::json::array();
      for (const Edge& e : c.tree)
        tree.push_back({m.ids()[static_cast<std::size_t>(e.u)],
                        m.ids()[static_cast<std::size_t>(e.v)]});
      clusters.push_back({{"vertices", verts},
                          {"tree", tree},
                          {"status", to_string(cluster_status(c, l))}});
    }
    levels.push_back({{"level", l}, {"clusters", clusters}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [e, lvl] : edge_levels_)
    edges.push_back({{"u", m.ids()[static_cast<std::size_t>(e.u)]},
                     {"v", m.ids()[static_cast<std::size_t>(e.v)]},
                     {"level", lvl}});
  return {{"r", r_}, {"s", s_}, {"levels", levels}, {"edges", edges}};
}

std::vector<int> find_low_degree(int num_nodes,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<char>& in_a, int want) {
  int a_size = 0;
  for (char f : in_a) a_size += f != 0;
  auto e = static_cast<long>(edges.size());
  if (e < 6L * want)
    throw PreconditionViolated("forest has fewer than " +
                               std::to_string(6 * want) + " edges");
  if (e <= 3L * a_size)
    throw PreconditionViolated("forest has at most 3|A| edges");

  std::vector<int> degree(static_cast<std::size_t>(num_nodes), 0);
  for (auto [x, y] : edges) {
    ++degree[static_cast<std::size_t>(x)];
    ++degree[static_cast<std::size_t>(y)];
  }
  std::vector<int> picked;
  for (int v = 0; v < num_nodes && static_cast<int>(picked.size()) < want; ++v) {
    if (in_a[static_cast<std::size_t>(v)]) continue;
    if (degree[static_cast<std::size_t>(v)] == 1 ||
        degree[static_cast<std::size_t>(v)] == 2)
      picked.push_back(v);
  }
  if (static_cast<int>(picked.size()) < want)
    throw PreconditionViolated("not enough low-degree nodes outside A");
  return picked;
}

std::vector<int> boundary_clusters(const Skeleton& sk,
                                   const std::vector<int>& zt) {
  std::vector<char> in_z(static_cast<std::size_t>(sk.num_nodes), 0);
  for (int z : zt) in_z[static_cast<std::size_t>(z)] = 1;
  std::vector<char> out(static_cast<std::size_t>(sk.num_nodes), 0);
  for (auto [a, b] : sk.edges) {
    if (in_z[static_cast<std::size_t>(a)] && !in_z[static_cast<std::size_t>(b)])
      out[static_cast<std::size_t>(b)] = 1;
    if (in_z[static_cast<std::size_t>(b)] && !in_z[static_cast<std::size_t>(a)])
      out[static_cast<std::size_t>(a)] = 1;
  }
  std::vector<int> bt;
  for (int v = 0; v < sk.num_nodes; ++v)
    if (out[static_cast<std::size_t>(v)]) bt.push_back(v);
  return bt;
}

SafeSplit classify_safe(const Hierarchy& prev, int lstar,
                        const std::vector<int>& zt,
                        const std::vector<int>& bt) {
  if (lstar < 0) throw LevelOutOfRange(lstar);
  int level = std::min(lstar, prev.s());
  Skeleton sk = prev.skeleton(level);
  const Clustering& base = prev.level(level);

  for (int ci : zt) {
    if (ci < 0 || ci >= sk.num_nodes) throw PreconditionViolated("bad cluster index");
    if (cluster_status(base.clusters[static_cast<std::size_t>(ci)], lstar) !=
        ClusterKind::Zombie)
      throw PreconditionViolated("chosen cluster is not a zombie");
    int deg = sk.degree[static_cast<std::size_t>(ci)];
    if (deg < 1 || deg > 2)
      throw PreconditionViolated("chosen cluster has degree " +
                                 std::to_string(deg));
  }
  std::vector<int> expect = boundary_clusters(sk, zt);
  std::vector<int> got = bt;
  std::sort(got.begin(), got.end());
  if (got != expect)
    throw PreconditionViolated("boundary set does not match the skeleton");

  int n = 0;
  for (const Cluster& c : base.clusters) n += static_cast<int>(c.members.size());
  std::vector<int> owner = base.owner(n);
  std::vector<char> in_zb(static_cast<std::size_t>(sk.num_nodes), 0);
  for (int z : zt) in_zb[static_cast<std::size_t>(z)] = 1;
  for (int b : bt) in_zb[static_cast<std::size_t>(b)] = 1;

  SafeSplit out;
  for (const auto& [e, lvl] : prev.edge_levels()) {
    bool safe = lvl <= lstar ||
                !in_zb[static_cast<std::size_t>(owner[static_cast<std::size_t>(e.u)])] ||
                !in_zb[static_cast<std::size_t>(owner[static_cast<std::size_t>(e.v)])];
    (safe ? out.safe : out.unsafe).push_back(e);
  }
  sort_unique(out.safe);
  sort_unique(out.unsafe);
  return out;
}

}  // namespace dynsteiner
