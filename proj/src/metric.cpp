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

#include "dynsteiner/metric.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace dynsteiner {

int ceil_log2(Length x) {
  if (x <= 1) return 0;
  return std::bit_width(static_cast<std::uint64_t>(x - 1));
}

int MetricSpace::index_of(Vid id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownVertex(id);
  return it->second;
}

void MetricSpace::recompute_tau_max() {
  Length dmax = 0;
  for (Length x : d_) dmax = std::max(dmax, x);
  tau_max_ = ceil_log2(dmax);
}

MetricSpace MetricSpace::validate(std::vector<Vid> points,
                                  const std::vector<DistEntry>& entries) {
  if (points.empty()) throw InputError("metric needs at least one point");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] == points[i - 1]) throw DuplicateId(points[i]);

  MetricSpace m;
  m.ids_ = std::move(points);
  m.n_ = m.ids_.size();
  for (std::size_t i = 0; i < m.n_; ++i)
    m.index_.emplace(m.ids_[i], static_cast<int>(i));

  constexpr Length kUnset = -1;
  m.d_.assign(m.n_ * m.n_, kUnset);
  for (std::size_t i = 0; i < m.n_; ++i) m.d_[i * m.n_ + i] = 0;

  for (const DistEntry& e : entries) {
    int i = m.index_of(e.u);
    int j = m.index_of(e.v);
    if (i == j) {
      if (e.d != 0) throw NonPositiveDistance("d(v,v) must be 0");
      continue;
    }
    if (e.d <= 0)
      throw NonPositiveDistance("d(" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ") is not positive");
    Length& fwd = m.d_[static_cast<std::size_t>(i) * m.n_ + j];
    Length& bwd = m.d_[static_cast<std::size_t>(j) * m.n_ + i];
    if ((fwd != kUnset && fwd != e.d) || (bwd != kUnset && bwd != e.d))
      throw AsymmetricDistance("conflicting lengths for (" +
                               std::to_string(e.u) + "," +
                               std::to_string(e.v) + ")");
    fwd = e.d;
    bwd = e.d;
  }

  Length dmin = std::numeric_limits<Length>::max();
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = i + 1; j < m.n_; ++j) {
      Length v = m.d_[i * m.n_ + j];
      if (v == kUnset)
        throw InputError("missing distance between " +
                         std::to_string(m.ids_[i]) + " and " +
                         std::to_string(m.ids_[j]));
      dmin = std::min(dmin, v);
    }

  m.check_triangle();

  if (m.n_ >= 2 && dmin < 2) {
    for (Length& v : m.d_) v *= 2;
    m.rescaled_ = true;
  }
  m.recompute_tau_max();
  return m;
}

void MetricSpace::check_triangle() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (d_[i * n_ + j] > d_[i * n_ + k] + d_[k * n_ + j])
          throw TriangleViolation(ids_[i], ids_[k], ids_[j]);
}

MetricSpace MetricSpace::extend(
    Vid new_id, const std::vector<std::pair<Vid, Length>>& dists_to_alive,
    const std::vector<Vid>& alive) const {
  if (has(new_id)) throw DuplicateId(new_id);

  std::vector<char> is_alive(n_, 0);
  for (Vid a : alive) {
    int i = index_of(a);
    is_alive[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<Length> to_new(n_, -1);
  std::size_t covered = 0;
  for (const auto& [id, len] : dists_to_alive) {
    auto it = index_.find(id);
    if (it == index_.end() || !is_alive[static_cast<std::size_t>(it->second)])
      throw UnknownAliveVertex("distance given for non-alive vertex " +
                               std::to_string(id));
    if (len <= 0)
      throw NonPositiveDistance("d(" + std::to_string(new_id) + "," +
                                std::to_string(id) + ") is not positive");
    if (to_new[static_cast<std::size_t>(it->second)] != -1)
      throw InputError("duplicate distance for vertex " + std::to_string(id));
    to_new[static_cast<std::size_t>(it->second)] = len;
    ++covered;
  }
  if (covered != alive.size())
    throw InputError("distances must cover the alive set exactly");

  // Triangle inequality restricted to {new_id} + alive.
  for (std::size_t i = 0; i < n_; ++i) {
    if (!is_alive[i]) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!is_alive[j] || i == j) continue;
      if (to_new[i] > to_new[j] + d_[j * n_ + i])
        throw TriangleViolation(new_id, ids_[j], ids_[i]);
      if (d_[i * n_ + j] > to_new[i] + to_new[j])
        throw TriangleViolation(ids_[i], new_id, ids_[j]);
    }
  }

  MetricSpace out;
  out.n_ = n_ + 1;
  out.ids_ = ids_;
  out.ids_.push_back(new_id);
  out.index_ = index_;
  out.index_.emplace(new_id, static_cast<int>(n_));
  out.rescaled_ = rescaled_;
  out.d_.assign(out.n_ * out.n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out.d_[i * out.n_ + j] = d_[i * n_ + j];

  // Distances to deleted vertices go through the nearest alive detour.
  for (std::size_t s = 0; s < n_; ++s) {
    Length best;
    if (is_alive[s]) {
      best = to_new[s];
    } else {
      if (alive.empty())
        throw InputError("cannot extend: no alive vertex to route through");
      best = std::numeric_limits<Length>::max();
      for (std::size_t a = 0; a < n_; ++a)
        if (is_alive[a]) best = std::min(best, to_new[a] + d_[a * n_ + s]);
    }
    out.d_[s * out.n_ + n_] = best;
    out.d_[n_ * out.n_ + s] = best;
  }
  out.recompute_tau_max();
  return out;
}

Length MetricSpace::cost(const EdgeSet& edges) const {
  Length total = 0;
  for (const Edge& e : edges) total += dist(e.u, e.v);
  return total;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

}  // namespace

EdgeSet mst(const MetricSpace& m, const std::vector<Vid>& subset) {
  if (subset.empty()) throw EmptySubset();
  std::vector<Vid> verts = subset;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (Vid v : verts) (void)m.index_of(v);

  struct Cand {
    Length len;
    Edge e;
  };
  std::vector<Cand> cands;
  cands.reserve(verts.size() * (verts.size() - 1) / 2);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      cands.push_back({m.dist(verts[i], verts[j]), {verts[i], verts[j]}});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.len != b.len ? a.len < b.len : a.e < b.e;
  });

  std::vector<int> local(verts.size());
  std::iota(local.begin(), local.end(), 0);
  Dsu dsu(static_cast<int>(verts.size()));
  auto pos = [&](Vid v) {
    return static_cast<int>(
        std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  EdgeSet out;
  for (const Cand& c : cands) {
    if (dsu.unite(pos(c.e.u), pos(c.e.v))) out.push_back(c.e);
    if (out.size() + 1 == verts.size()) break;
  }
  sort_unique(out);
  return out;
}

Length mst_cost(const MetricSpace& m, const std::vector<Vid>& subset) {
  return m.cost(mst(m, subset));
}

VertexStates VertexStates::initial(const MetricSpace& m) {
  VertexStates st;
  st.alive_.assign(static_cast<std::size_t>(m.size()), 1);
  st.tau_.assign(static_cast<std::size_t>(m.size()), m.tau_max());
  st.tau_max_ = m.tau_max();
  return st;
}

void VertexStates::lower_tau(int i, int level) {
  if (alive_[static_cast<std::size_t>(i)])
    throw InvariantFailure("threshold of an alive vertex may not drop");
  int& t = tau_[static_cast<std::size_t>(i)];
  t = std::min(t, level);
}

int VertexStates::alive_count() const {
  int c = 0;
  for (char a : alive_) c += a != 0;
  return c;
}

void VertexStates::check_consistent() const {
  for (std::size_t i = 0; i < alive_.size(); ++i) {
    if (alive_[i] && tau_[i] != tau_max_)
      throw InvariantFailure("alive vertex with lowered threshold");
    if (tau_[i] < 0 || tau_[i] > tau_max_)
      throw InvariantFailure("threshold out of range");
  }
}

}  // namespace dynsteiner
