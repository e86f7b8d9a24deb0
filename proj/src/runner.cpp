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

#include "dynsteiner/runner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "dynsteiner/amortized.hpp"
#include "dynsteiner/dynamic_tree.hpp"
#include "dynsteiner/lipschitz.hpp"
#include "dynsteiner/oracle.hpp"

namespace dynsteiner {

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::Amortized:
      return "amortized";
    case Algo::Lipschitz:
      return "lipschitz";
    case Algo::Dynamic:
      return "dynamic";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "amortized") return Algo::Amortized;
  if (name == "lipschitz") return Algo::Lipschitz;
  if (name == "dynamic") return Algo::Dynamic;
  return std::nullopt;
}

void Ratio::update(Length n, Length d) {
  if (d <= 0) return;
  if (den == 0 || n * den > num * d) {
    num = n;
    den = d;
  }
}

bool operator==(const StepReport& a, const StepReport& b) {
  return a.t == b.t && a.algo == b.algo && a.cost == b.cost && a.mst == b.mst &&
         a.opt == b.opt && a.lb_quarters == b.lb_quarters &&
         a.churn == b.churn && a.swaps == b.swaps && a.splices == b.splices &&
         a.zt == b.zt && a.failures.size() == b.failures.size();
}

namespace {

constexpr Length kInf = std::numeric_limits<Length>::max();

Length pow2_len(int k) { return k >= 62 ? kInf : Length{1} << k; }

struct Failures {
  std::vector<std::string>* out;
  void expect(bool cond, const std::string& msg) {
    if (!cond) out->push_back(msg);
  }
};

Length cluster_distance(const MetricSpace& m, const Cluster& a,
                        const Cluster& b) {
  Length best = kInf;
  for (int i : a.members)
    for (int j : b.members) best = std::min(best, m.at(i, j));
  return best;
}

void check_no_bad_levels(const Hierarchy& h, int tau_max, Failures& f) {
  int top = std::max(h.s(), tau_max);
  for (int l = 0; l <= top; ++l) {
    int z = h.zombie_count(l);
    f.expect(!(z > 0 && z >= h.alive_count(l)),
             "bad level " + std::to_string(l) + " after the step");
  }
}

void check_dead_singletons(const Hierarchy& h, Failures& f) {
  for (int l = 0; l <= h.s(); ++l)
    for (const Cluster& c : h.level(l).clusters)
      f.expect(cluster_status(c, l) != ClusterKind::Dead ||
                   c.members.size() == 1,
               "non-singleton dead cluster at level " + std::to_string(l));
  f.expect(h.r() == h.s(), "r and s levels differ");
}

// Merge-loop exit condition: in C_L no two (L-1)-non-dead clusters sit within
// the merge radius of the pass that built C_L.
void check_separation(const MetricSpace& m, const Hierarchy& h,
                      bool doubling_radius, Failures& f) {
  for (int L = 1; L <= h.s(); ++L) {
    Length rad = pow2_len(doubling_radius ? L : L - 1);
    const auto& cs = h.level(L).clusters;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!cluster_non_dead(cs[i], L - 1)) continue;
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        if (!cluster_non_dead(cs[j], L - 1)) continue;
        f.expect(cluster_distance(m, cs[i], cs[j]) > rad,
                 "two non-dead clusters within the merge radius at level " +
                     std::to_string(L));
      }
    }
  }
}

// Acyclicity plus (optionally) that `must_cover` lies inside one component.
void check_forest_connects(const EdgeSet& edges,
                           const std::vector<Vid>& must_cover, bool one_tree,
                           Failures& f, const std::string& what) {
  std::vector<Vid> verts;
  for (const Edge& e : edges) {
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(
          parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto pos = [&](Vid v) -> int {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    return it != verts.end() && *it == v
               ? static_cast<int>(it - verts.begin())
               : -1;
  };
  for (const Edge& e : edges) {
    int a = find(pos(e.u)), b = find(pos(e.v));
    if (a == b) {
      f.expect(false, what + " contains a cycle");
      return;
    }
    parent[static_cast<std::size_t>(b)] = a;
  }
  if (one_tree && !edges.empty()) {
    int root = find(0);
    for (std::size_t i = 1; i < verts.size(); ++i)
      if (find(static_cast<int>(i)) != root) {
        f.expect(false, what + " is not a single tree");
        return;
      }
  }
  if (must_cover.size() >= 2) {
    int root = -1;
    for (Vid v : must_cover) {
      int p = pos(v);
      if (p < 0) {
        f.expect(false, what + " misses vertex " + std::to_string(v));
        return;
      }
      int r = find(p);
      if (root < 0) root = r;
      f.expect(r == root, what + " splits the alive vertices");
    }
  } else if (must_cover.size() == 1 && one_tree && !edges.empty()) {
    f.expect(pos(must_cover.front()) >= 0,
             what + " misses vertex " + std::to_string(must_cover.front()));
  }
}

void check_refinement(const Hierarchy& now, const Hierarchy& prev, int n,
                      Failures& f) {
  int top = std::max(now.s(), prev.s());
  for (int l = 0; l <= top; ++l) {
    std::vector<int> prev_owner = prev.level_clamped(l).owner(n);
    for (const Cluster& c : now.level_clamped(l).clusters) {
      int o = prev_owner[static_cast<std::size_t>(c.members.front())];
      for (int v : c.members)
        if (prev_owner[static_cast<std::size_t>(v)] != o) {
          f.expect(false,
                   "level " + std::to_string(l) + " is not a refinement");
          return;
        }
    }
  }
}

void fill_level_stats(const Hierarchy& h, bool edge_goodness,
                      std::vector<LevelStat>& out) {
  for (int l = 0; l <= h.s(); ++l) {
    LevelStat st;
    st.level = l;
    st.m_above = h.m_above(l);
    st.alive = h.alive_count(l);
    if (edge_goodness) {
      st.good = st.m_above <= 3 * st.alive;
    } else {
      int z = h.zombie_count(l);
      st.good = !(z > 0 && z >= st.alive);
    }
    out.push_back(st);
  }
}

std::optional<Length> maybe_opt(const MetricSpace& m,
                                const std::vector<Vid>& alive,
                                const RunOptions& opts) {
  if (opts.opt_limit == 0 || alive.size() > opts.opt_limit)
    return std::nullopt;
  if (alive.size() <= 1) return Length{0};
  return opt_steiner(m, alive, opts.opt_limit).cost;
}

void oracle_sanity(std::optional<Length> opt, Length mst_val,
                   std::optional<std::int64_t> lb_quarters, bool assert_lb,
                   Failures& f) {
  if (!opt) return;
  f.expect(mst_val <= 2 * *opt, "MST exceeds twice the optimum");
  if (assert_lb && lb_quarters)
    f.expect(*lb_quarters <= 4 * *opt, "dual lower bound exceeds the optimum");
}

RunResult run_amortized(const Trace& trace, const RunOptions& opts) {
  if (!trace.init) throw TraceError("amortized run needs an init record");
  MetricSpace m = MetricSpace::validate(trace.init->points, trace.init->dists);
  AmortizedDeleter del(std::move(m));
  const MetricSpace& metric = del.metric();
  const int n = metric.size();

  RunResult res;
  res.summary.algo = Algo::Amortized;
  res.summary.init_cost = del.tree_cost();

  std::set<Vid> zapped_seen;
  std::size_t zap_total = 0;
  int t = 0;
  for (const Request& r : trace.requests) {
    ++t;
    const auto& req = std::get<DelRequest>(r);
    AmortizedStep info = del.erase(req.id);

    StepReport row;
    row.t = t;
    row.algo = Algo::Amortized;
    row.cost = del.tree_cost();
    std::vector<Vid> alive = del.alive_ids();
    row.mst = alive.size() >= 2 ? mst_cost(metric, alive) : 0;
    row.churn = info.churn;
    row.zt = info.zapped.size();
    row.lb_quarters = dual_lower_bound_quarters(del.clustering());
    row.opt = maybe_opt(metric, alive, opts);
    if (opts.level_dump) fill_level_stats(del.clustering(), false, row.levels);

    Failures f{&row.failures};
    f.expect(info.churn <= 3 * info.zapped.size(),
             "churn " + std::to_string(info.churn) + " exceeds 3|Z|");
    if (info.case_two) f.expect(!info.zapped.empty(), "drastic step zapped nothing");
    check_no_bad_levels(del.clustering(), metric.tau_max(), f);
    for (Vid z : info.zapped)
      f.expect(zapped_seen.insert(z).second,
               "vertex " + std::to_string(z) + " zapped twice");
    zap_total += info.zapped.size();
    f.expect(zap_total <= static_cast<std::size_t>(n),
             "total zapped vertices exceed n");

    if (opts.checks == CheckLevel::Full) {
      try {
        del.states().check_consistent();
        del.clustering().check_structure(metric);
      } catch (const InvariantFailure& e) {
        f.expect(false, e.what());
      }
      check_dead_singletons(del.clustering(), f);
      check_separation(metric, del.clustering(), true, f);
      check_forest_connects(del.tree(), alive, true, f, "output tree");

      const Hierarchy& h = del.clustering();
      Length bound = 2 * h.nondead_count(0);
      for (int l = 1; l <= h.r(); ++l)
        bound += static_cast<Length>(h.nondead_count(l)) * pow2_len(l);
      f.expect(row.cost <= bound, "tree cost exceeds the level-count bound");
      oracle_sanity(row.opt, row.mst, row.lb_quarters, true, f);
    }

    res.summary.total_churn += row.churn;
    res.summary.max_churn = std::max(res.summary.max_churn, row.churn);
    res.summary.total_zt += row.zt;
    res.summary.case_two_steps += info.case_two ? 1 : 0;
    res.summary.max_cost_over_mst.update(row.cost, row.mst);
    if (row.opt) res.summary.max_cost_over_opt.update(row.cost, *row.opt);
    if (row.lb_quarters)
      res.summary.max_cost_over_lb.update(row.cost * 4, *row.lb_quarters);
    res.summary.failures += static_cast<int>(row.failures.size());
    if (opts.fail_fast && !row.failures.empty())
      throw InvariantFailure("step " + std::to_string(t) + ": " +
                             row.failures.front());
    res.steps.push_back(std::move(row));
  }
  res.summary.steps = t;
  return res;
}

RunResult run_lipschitz(const Trace& trace, const RunOptions& opts) {
  if (!trace.init) throw TraceError("lipschitz run needs an init record");
  MetricSpace m = MetricSpace::validate(trace.init->points, trace.init->dists);
  LipschitzDeleter del(std::move(m));
  const MetricSpace& metric = del.metric();
  const LipschitzConfig& cfg = del.config();
  const int n = metric.size();

  RunResult res;
  res.summary.algo = Algo::Lipschitz;
  res.summary.init_cost = del.forest_cost();

  int t = 0;
  for (const Request& r : trace.requests) {
    ++t;
    const auto& req = std::get<DelRequest>(r);
    LipschitzStep info = del.erase(req.id);

    StepReport row;
    row.t = t;
    row.algo = Algo::Lipschitz;
    row.cost = del.forest_cost();
    std::vector<Vid> alive = del.alive_ids();
    row.mst = alive.size() >= 2 ? mst_cost(metric, alive) : 0;
    row.churn = info.churn;
    row.zt = info.zapped.size();
    row.lb_quarters = dual_lower_bound_quarters(del.clustering());
    row.opt = maybe_opt(metric, alive, opts);
    if (opts.level_dump) fill_level_stats(del.clustering(), true, row.levels);

    Failures f{&row.failures};
    const Hierarchy& h = del.clustering();
    for (int l = 0; l <= h.s(); ++l) {
      int ma = h.m_above(l);
      int a = h.alive_count(l);
      if (ma >= cfg.case_two_min_edges) {
        ++res.summary.invariant_hypothesis_hits;
        f.expect(ma <= 3 * a + cfg.invariant_slack,
                 "heavy level " + std::to_string(l) + " breaks the invariant: m=" +
                     std::to_string(ma) + " a=" + std::to_string(a));
      }
    }
    f.expect(info.churn <= static_cast<std::size_t>(cfg.churn_bound),
             "churn " + std::to_string(info.churn) + " exceeds the bound");
    f.expect(info.full_drop <= static_cast<std::size_t>(cfg.drop_bound),
             "full-forest drop " + std::to_string(info.full_drop) +
                 " exceeds the bound");
    f.expect(is_subset(del.forest(), del.full_forest()),
             "output forest leaves the full forest");
    std::size_t trailing = del.full_forest().size() - del.forest().size();
    f.expect(trailing <= static_cast<std::size_t>(cfg.trailing_bound),
             "trailing edges " + std::to_string(trailing) + " exceed the bound");
    if (info.case_two) {
      f.expect(static_cast<int>(info.killed_clusters.size()) == cfg.kill_count,
               "drastic step killed the wrong number of clusters");
      f.expect(info.full_before.size() >=
                   info.full_after.size() +
                       static_cast<std::size_t>(cfg.kill_count / 2),
               "full forest shrank too little");
    }

    if (opts.checks == CheckLevel::Full) {
      try {
        del.states().check_consistent();
        h.check_structure(metric);
      } catch (const InvariantFailure& e) {
        f.expect(false, e.what());
      }
      check_separation(metric, h, false, f);
      check_forest_connects(del.forest(), alive, false, f, "output forest");
      check_refinement(h, info.prev_final, n, f);

      int top = std::max(h.s(), info.prev_final.s());
      for (int l = 0; l <= top; ++l)
        f.expect(h.alive_count(l) >= info.prev_final.alive_count(l) - 1,
                 "alive clusters dropped by more than one at level " +
                     std::to_string(l));

      if (info.case_two) {
        for (int l = 0; l <= top; ++l) {
          if (l <= info.lstar)
            f.expect(h.m_above(l) <=
                         info.prev_final.m_above(l) - cfg.kill_count / 2,
                     "edges above level " + std::to_string(l) +
                         " shrank too little");
          else
            f.expect(h.m_above(l) <=
                         info.prev_final.m_above(l) + 3 * cfg.kill_count,
                     "edges above level " + std::to_string(l) +
                         " grew too much");
        }
        f.expect(info.safety.unsafe.size() <=
                     static_cast<std::size_t>(3 * cfg.kill_count - 1),
                 "too many unsafe edges");
        // safe edges reappear at their level
        std::map<Edge, int> now_level;
        for (const auto& [e, lvl] : h.edge_levels()) now_level[e] = lvl;
        for (const auto& [e, lvl] : info.intermediate.edge_levels()) {
          if (!contains_edge(info.safety.safe, e)) continue;
          auto it = now_level.find(e);
          f.expect(it != now_level.end() && it->second == lvl,
                   "safe edge was not re-added at its level");
        }
        // killed clusters stay whole and dead above lstar
        std::vector<int> kill_idx;
        for (const auto& ids : info.killed_clusters) {
          std::vector<int> internal;
          for (Vid id : ids) internal.push_back(metric.index_of(id));
          std::sort(internal.begin(), internal.end());
          for (int l = info.lstar; l <= h.s(); ++l) {
            const Clustering& cl = h.level(l);
            std::vector<int> owner = cl.owner(n);
            int o = owner[static_cast<std::size_t>(internal.front())];
            const Cluster& c = cl.clusters[static_cast<std::size_t>(o)];
            f.expect(c.members == internal &&
                         cluster_status(c, l) == ClusterKind::Dead,
                     "killed cluster is not a dead cluster at level " +
                         std::to_string(l));
          }
        }
      }

      Length bound = 0;
      for (int l = 1; l <= h.r(); ++l)
        bound += pow2_len(l) * static_cast<Length>(h.m_above(l - 1));
      f.expect(row.cost <= bound, "forest cost exceeds the level-count bound");
      oracle_sanity(row.opt, row.mst, row.lb_quarters, false, f);
    }

    res.summary.total_churn += row.churn;
    res.summary.max_churn = std::max(res.summary.max_churn, row.churn);
    res.summary.total_zt += row.zt;
    res.summary.case_two_steps += info.case_two ? 1 : 0;
    res.summary.max_full_drop =
        std::max(res.summary.max_full_drop, info.full_drop);
    res.summary.max_full_trailing =
        std::max(res.summary.max_full_trailing, trailing);
    res.summary.max_cost_over_mst.update(row.cost, row.mst);
    if (row.opt) res.summary.max_cost_over_opt.update(row.cost, *row.opt);
    if (row.lb_quarters)
      res.summary.max_cost_over_lb.update(row.cost * 4, *row.lb_quarters);
    res.summary.failures += static_cast<int>(row.failures.size());
    if (opts.fail_fast && !row.failures.empty())
      throw InvariantFailure("step " + std::to_string(t) + ": " +
                             row.failures.front());
    res.steps.push_back(std::move(row));
  }
  res.summary.steps = t;
  return res;
}

RunResult run_dynamic(const Trace& trace, const RunOptions& opts) {
  if (trace.init) throw TraceError("dynamic run takes add/del requests only");
  DynamicGreedyTree dt;
  RunResult res;
  res.summary.algo = Algo::Dynamic;

  std::vector<Vid> add_order;
  int t = 0;
  for (const Request& r : trace.requests) {
    ++t;
    DynStep info;
    if (const auto* add = std::get_if<AddRequest>(&r)) {
      info = dt.add(add->id, add->dists);
      add_order.push_back(add->id);
    } else {
      info = dt.remove(std::get<DelRequest>(r).id);
    }

    const MetricSpace& metric = dt.metric();
    StepReport row;
    row.t = t;
    row.algo = Algo::Dynamic;
    row.cost = dt.tree_cost();
    std::vector<Vid> alive(dt.alive().begin(), dt.alive().end());
    row.mst = alive.size() >= 2 ? mst_cost(metric, alive) : 0;
    row.opt = maybe_opt(metric, alive, opts);
    row.churn = info.churn;
    row.swaps = info.swaps;
    row.splices = info.splices;

    BigInt phi_shadow = dt.shadow().potential();
    row.phi_bits =
        static_cast<long>(boost::multiprecision::msb(phi_shadow)) + 1;

    Failures f{&row.failures};
    f.expect(row.cost <= 4 * row.mst,
             "tree cost exceeds four times the alive MST");
    long nb = dt.swap_count(), nd = dt.splice_count();
    f.expect(nb <= 2 * static_cast<long>(metric.size()) + nd,
             "swap count exceeds 2|V| + splices");
    f.expect(nb + nd <= 2L * t, "swap total exceeds twice the request count");

    for (Vid v : alive)
      f.expect(dt.tree_vertices().count(v) != 0,
               "alive vertex " + std::to_string(v) + " left the tree");
    for (Vid v : dt.tree_vertices()) {
      if (dt.is_alive(v)) continue;
      int deg = 0;
      for (const Edge& e : dt.tree()) deg += (e.u == v) + (e.v == v);
      f.expect(deg >= 3, "retained vertex " + std::to_string(v) +
                             " has degree " + std::to_string(deg));
    }
    check_forest_connects(
        dt.tree(), std::vector<Vid>(dt.tree_vertices().begin(),
                                    dt.tree_vertices().end()),
        true, f, "maintained tree");
    f.expect(dt.tree_vertices().empty()
                 ? dt.tree().empty()
                 : dt.tree().size() + 1 == dt.tree_vertices().size(),
             "tree edge count disagrees with its vertex count");

    f.expect(dt.shadow().black_edges() == dt.tree(),
             "stripping red edges does not leave the tree");
    f.expect(dt.shadow().size() + 1 ==
                 static_cast<std::size_t>(metric.size()) + (metric.size() == 0),
             "shadow edge count is off");
    check_forest_connects(dt.shadow().all_edges(), {}, true, f, "shadow tree");

    EdgeSet mst_all = mst(metric, metric.ids());
    BigInt phi_mst = phi(metric, mst_all);
    BigInt lhs = phi_shadow << static_cast<unsigned>(nb);
    BigInt rhs = dt.greedy_potential() << static_cast<unsigned>(nd);
    f.expect(lhs <= rhs, "shadow potential exceeds the greedy budget");
    f.expect(phi_shadow >= phi_mst, "shadow potential below the MST potential");
    BigInt greedy_cap = phi_mst << static_cast<unsigned>(2 * metric.size());
    f.expect(dt.greedy_potential() <= greedy_cap,
             "greedy potential exceeds 4^|V| times the MST potential");

    if (opts.checks == CheckLevel::Full) {
      f.expect(dt.find_valid_swaps().empty(), "a valid 2-swap survived");
      if (info.was_add && metric.size() >= 2) {
        Length best = kInf;
        for (Vid x : metric.ids())
          if (x != info.id) best = std::min(best, metric.dist(info.id, x));
        bool alive_min = false;
        for (Vid x : metric.ids())
          if (x != info.id && metric.dist(info.id, x) == best &&
              dt.is_alive(x))
            alive_min = true;
        f.expect(alive_min, "nearest vertex to the arrival is not alive");
      }
      if (!dt.tree_vertices().empty()) {
        // each red component hangs off exactly one tree vertex
        std::map<Vid, int> comp;
        int nc = 0;
        for (Vid v : metric.ids()) comp[v] = nc++;
        std::vector<int> parent(static_cast<std::size_t>(nc));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
          while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(
                    parent[static_cast<std::size_t>(x)])];
          return x;
        };
        for (const Edge& e : dt.shadow().all_edges())
          if (dt.shadow().is_red(e)) {
            int a = find(comp[e.u]), b = find(comp[e.v]);
            if (a != b) parent[static_cast<std::size_t>(b)] = a;
          }
        std::map<int, int> tree_count;
        for (Vid v : metric.ids()) tree_count[find(comp[v])] += 0;
        for (Vid v : dt.tree_vertices()) tree_count[find(comp[v])] += 1;
        for (const auto& [root, cnt] : tree_count)
          f.expect(cnt == 1, "a red component holds " + std::to_string(cnt) +
                                 " tree vertices");
      }
    }

    res.summary.total_churn += row.churn;
    res.summary.max_churn = std::max(res.summary.max_churn, row.churn);
    res.summary.total_swaps += row.swaps;
    res.summary.total_splices += row.splices;
    res.summary.max_cost_over_mst.update(row.cost, row.mst);
    if (row.opt) res.summary.max_cost_over_opt.update(row.cost, *row.opt);
    res.summary.failures += static_cast<int>(row.failures.size());
    if (opts.fail_fast && !row.failures.empty())
      throw InvariantFailure("step " + std::to_string(t) + ": " +
                             row.failures.front());
    res.steps.push_back(std::move(row));
  }
  res.summary.steps = t;
  res.summary.total_swaps = dt.swap_count();
  res.summary.total_splices = dt.splice_count();

  if (opts.checks == CheckLevel::Full && !res.steps.empty() &&
      !add_order.empty()) {
    // the greedy edges must match a greedy run on the additions alone
    const MetricSpace& metric = dt.metric();
    EdgeSet replay;
    for (std::size_t i = 1; i < add_order.size(); ++i) {
      Vid id = add_order[i];
      Vid best_v = add_order[0];
      Length best = metric.dist(id, best_v);
      for (std::size_t j = 1; j < i; ++j) {
        Length d = metric.dist(id, add_order[j]);
        if (d < best || (d == best && add_order[j] < best_v)) {
          best = d;
          best_v = add_order[j];
        }
      }
      replay.push_back(make_edge(id, best_v));
    }
    sort_unique(replay);
    EdgeSet greedy;
    for (const auto& [e, len] : dt.greedy_edges()) greedy.push_back(e);
    sort_unique(greedy);
    if (replay != greedy) {
      res.steps.back().failures.push_back(
          "greedy edges differ from the additions-only replay");
      ++res.summary.failures;
    }
  }
  return res;
}

}  // namespace

RunResult run_trace(const Trace& trace, Algo algo, const RunOptions& opts) {
  check_trace(trace);
  switch (algo) {
    case Algo::Amortized:
      return run_amortized(trace, opts);
    case Algo::Lipschitz:
      return run_lipschitz(trace, opts);
    case Algo::Dynamic:
      return run_dynamic(trace, opts);
  }
  throw InputError("unknown algorithm");
}

namespace {

std::string quarters_string(std::int64_t q) {
  std::int64_t whole = q / 4, frac = (q % 4) * 25;
  std::string f = std::to_string(frac);
  if (f.size() == 1) f = "0" + f;
  return std::to_string(whole) + "." + f;
}

std::int64_t parse_quarters(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) throw IoError("bad lb field: " + s);
  std::int64_t whole = std::stoll(s.substr(0, dot));
  std::int64_t frac = std::stoll(s.substr(dot + 1));
  if (frac % 25 != 0) throw IoError("bad lb field: " + s);
  return whole * 4 + frac / 25;
}

}  // namespace

std::string report_csv(const std::vector<StepReport>& steps) {
  std::ostringstream o;
  o << "t,algo,cost,mst,opt,lb,churn,swaps,splices,zt,fails\n";
  for (const StepReport& r : steps) {
    o << r.t << ',' << algo_name(r.algo) << ',' << r.cost << ',' << r.mst
      << ',';
    if (r.opt) o << *r.opt;
    o << ',';
    if (r.lb_quarters) o << quarters_string(*r.lb_quarters);
    o << ',' << r.churn << ',' << r.swaps << ',' << r.splices << ',' << r.zt
      << ',' << r.failures.size() << '\n';
  }
  return o.str();
}

std::vector<StepReport> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "t,algo,cost,mst,opt,lb,churn,swaps,splices,zt,fails")
    throw IoError("bad report header");
  std::vector<StepReport> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 11) throw IoError("bad report row: " + line);
    StepReport r;
    r.t = std::stoi(fields[0]);
    auto a = algo_from_name(fields[1]);
    if (!a) throw IoError("bad algo name: " + fields[1]);
    r.algo = *a;
    r.cost = std::stoll(fields[2]);
    r.mst = std::stoll(fields[3]);
    if (!fields[4].empty()) r.opt = std::stoll(fields[4]);
    if (!fields[5].empty()) r.lb_quarters = parse_quarters(fields[5]);
    r.churn = static_cast<std::size_t>(std::stoull(fields[6]));
    r.swaps = std::stol(fields[7]);
    r.splices = std::stol(fields[8]);
    r.zt = static_cast<std::size_t>(std::stoull(fields[9]));
    r.failures.assign(static_cast<std::size_t>(std::stoul(fields[10])),
                      std::string{});
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json summary_json(const RunResult& result) {
  const RunSummary& s = result.summary;
  auto ratio = [](const Ratio& r) {
    return nlohmann::json{
        {"num", r.num}, {"den", r.den}, {"value", r.value()}};
  };
  nlohmann::json steps = nlohmann::json::array();
  for (const StepReport& r : result.steps) {
    nlohmann::json j = {{"t", r.t},        {"cost", r.cost},
                        {"mst", r.mst},    {"churn", r.churn},
                        {"swaps", r.swaps}, {"splices", r.splices},
                        {"zt", r.zt},      {"fails", r.failures}};
    if (r.opt) j["opt"] = *r.opt;
    if (r.lb_quarters) j["lb"] = quarters_string(*r.lb_quarters);
    if (r.phi_bits) j["phi_log2"] = *r.phi_bits;
    if (!r.levels.empty()) {
      nlohmann::json lv = nlohmann::json::array();
      for (const LevelStat& st : r.levels)
        lv.push_back({{"level", st.level},
                      {"m_above", st.m_above},
                      {"alive", st.alive},
                      {"good", st.good}});
      j["levels"] = lv;
    }
    steps.push_back(std::move(j));
  }
  return nlohmann::json{
      {"algo", algo_name(s.algo)},
      {"steps", s.steps},
      {"init_cost", s.init_cost},
      {"total_churn", s.total_churn},
      {"max_churn", s.max_churn},
      {"total_zt", s.total_zt},
      {"total_swaps", s.total_swaps},
      {"total_splices", s.total_splices},
      {"case_two_steps", s.case_two_steps},
      {"invariant_hypothesis_hits", s.invariant_hypothesis_hits},
      {"max_cost_over_mst", ratio(s.max_cost_over_mst)},
      {"max_cost_over_opt", ratio(s.max_cost_over_opt)},
      {"max_cost_over_lb_quarters", ratio(s.max_cost_over_lb)},
      {"max_full_drop", s.max_full_drop},
      {"max_full_trailing", s.max_full_trailing},
      {"failures", s.failures},
      {"rows", steps}};
}

}  // namespace dynsteiner
