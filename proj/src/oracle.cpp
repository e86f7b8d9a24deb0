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

#include "dynsteiner/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace dynsteiner {

namespace {

constexpr Length kInf = std::numeric_limits<Length>::max() / 4;

void check_steiner_tree(const MetricSpace& m, const EdgeSet& tree,
                        const std::vector<int>& term_idx, Length claimed) {
  if (term_idx.size() <= 1) {
    if (!tree.empty()) throw InvariantFailure("oracle built a nonempty tree");
    return;
  }
  std::vector<int> verts;
  for (const Edge& e : tree) {
    verts.push_back(static_cast<int>(e.u));
    verts.push_back(static_cast<int>(e.v));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (int t : term_idx)
    if (!std::binary_search(verts.begin(), verts.end(), t))
      throw InvariantFailure("oracle tree misses a terminal");
  if (tree.size() + 1 != verts.size())
    throw InvariantFailure("oracle tree has wrong edge count");
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(
          parent[static_cast<std::size_t>(x)])];
    return x;
  };
  auto pos = [&](Vid v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(),
                                             static_cast<int>(v)) -
                            verts.begin());
  };
  Length total = 0;
  for (const Edge& e : tree) {
    int a = find(pos(e.u)), b = find(pos(e.v));
    if (a == b) throw InvariantFailure("oracle tree has a cycle");
    parent[static_cast<std::size_t>(b)] = a;
    total += m.at(static_cast<int>(e.u), static_cast<int>(e.v));
  }
  if (total != claimed)
    throw InvariantFailure("oracle tree cost disagrees with the DP value");
}

}  // namespace

OracleResult opt_steiner(const MetricSpace& m, std::vector<Vid> terminals,
                         std::size_t terminal_limit) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()),
                  terminals.end());
  if (terminals.size() > terminal_limit)
    throw TooManyTerminals(terminals.size(), terminal_limit);

  OracleResult res;
  res.method = OracleMethod::DreyfusWagner;
  std::vector<int> term_idx;
  term_idx.reserve(terminals.size());
  for (Vid t : terminals) term_idx.push_back(m.index_of(t));
  if (terminals.size() <= 1) return res;

  const int n = m.size();
  const int k = static_cast<int>(terminals.size()) - 1;
  const int root = term_idx.back();
  const int full = (1 << k) - 1;

  // dp[mask][v]: optimal tree on {terminals in mask} + v.
  std::vector<std::vector<Length>> dp(
      static_cast<std::size_t>(full) + 1,
      std::vector<Length>(static_cast<std::size_t>(n), kInf));
  std::vector<std::vector<int>> via(
      static_cast<std::size_t>(full) + 1,
      std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::vector<int>> split(
      static_cast<std::size_t>(full) + 1,
      std::vector<int>(static_cast<std::size_t>(n), 0));

  for (int i = 0; i < k; ++i) {
    int mask = 1 << i;
    for (int v = 0; v < n; ++v)
      dp[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)] =
          m.at(term_idx[static_cast<std::size_t>(i)], v);
  }

  std::vector<Length> tmp(static_cast<std::size_t>(n));
  std::vector<int> tmp_split(static_cast<std::size_t>(n));
  for (int mask = 1; mask <= full; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) < 2) continue;
    for (int v = 0; v < n; ++v) {
      Length best = kInf;
      int best_sub = 0;
      int low = mask & -mask;
      // enumerate submasks containing the lowest terminal to kill symmetry
      for (int sub = mask; sub > 0; sub = (sub - 1) & mask) {
        if (sub == mask || !(sub & low)) continue;
        Length c = dp[static_cast<std::size_t>(sub)][static_cast<std::size_t>(v)] +
                   dp[static_cast<std::size_t>(mask ^ sub)]
                     [static_cast<std::size_t>(v)];
        if (c < best) {
          best = c;
          best_sub = sub;
        }
      }
      tmp[static_cast<std::size_t>(v)] = best;
      tmp_split[static_cast<std::size_t>(v)] = best_sub;
    }
    for (int v = 0; v < n; ++v) {
      Length best = kInf;
      int best_u = -1;
      for (int u = 0; u < n; ++u) {
        if (tmp[static_cast<std::size_t>(u)] >= kInf) continue;
        Length c = tmp[static_cast<std::size_t>(u)] + m.at(u, v);
        if (c < best) {
          best = c;
          best_u = u;
        }
      }
      dp[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)] = best;
      via[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)] = best_u;
      split[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)] =
          best_u < 0 ? 0 : tmp_split[static_cast<std::size_t>(best_u)];
    }
  }

  res.cost = dp[static_cast<std::size_t>(full)][static_cast<std::size_t>(root)];

  // Rebuild the edges of one optimal tree (internal indices first).
  EdgeSet internal;
  std::vector<std::pair<int, int>> stack = {{full, root}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    if (std::popcount(static_cast<unsigned>(mask)) == 1) {
      int i = std::countr_zero(static_cast<unsigned>(mask));
      int t = term_idx[static_cast<std::size_t>(i)];
      if (t != v) insert_edge(internal, make_edge(v, t));
      continue;
    }
    int u = via[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)];
    int sub = split[static_cast<std::size_t>(mask)][static_cast<std::size_t>(v)];
    if (u != v) insert_edge(internal, make_edge(v, u));
    stack.push_back({sub, u});
    stack.push_back({mask ^ sub, u});
  }
  check_steiner_tree(m, internal, term_idx, res.cost);
  for (const Edge& e : internal)
    res.tree.push_back(make_edge(m.ids()[static_cast<std::size_t>(e.u)],
                                 m.ids()[static_cast<std::size_t>(e.v)]));
  sort_unique(res.tree);
  return res;
}

OracleResult opt_steiner_enumerate(const MetricSpace& m,
                                   std::vector<Vid> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()),
                  terminals.end());
  OracleResult res;
  res.method = OracleMethod::Enumeration;
  for (Vid t : terminals) (void)m.index_of(t);
  if (terminals.size() <= 1) return res;

  std::vector<Vid> others;
  for (Vid id : m.ids())
    if (!std::binary_search(terminals.begin(), terminals.end(), id))
      others.push_back(id);
  if (others.size() > 24)
    throw InputError("instance too large for the enumeration oracle");

  Length best = kInf;
  EdgeSet best_tree;
  for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
    std::vector<Vid> verts = terminals;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask & (1u << i)) verts.push_back(others[i]);
    EdgeSet t = mst(m, verts);
    Length c = m.cost(t);
    if (c < best) {
      best = c;
      best_tree = std::move(t);
    }
  }
  res.cost = best;
  res.tree = std::move(best_tree);
  return res;
}

std::int64_t dual_lower_bound_quarters(const Hierarchy& h) {
  std::int64_t q = 0;
  for (int l = 0; l <= h.s(); ++l) {
    std::int64_t k = h.nondead_count(l);
    std::int64_t term = (k + 1) / 2 - 1;
    if (term <= 0) continue;
    if (l >= 62) throw InvariantFailure("level too large for the lower bound");
    q += term << l;
  }
  return q;
}

}  // namespace dynsteiner
