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

#include "dynsteiner/dynamic_tree.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace dynsteiner {

namespace {
constexpr Length kInf = std::numeric_limits<Length>::max();
}

std::vector<ShadowTree::Entry>::iterator ShadowTree::find(Edge e) {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Entry& a, const Edge& b) { return a.e < b; });
  return it != edges_.end() && it->e == e ? it : edges_.end();
}

std::vector<ShadowTree::Entry>::const_iterator ShadowTree::find(Edge e) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Entry& a, const Edge& b) { return a.e < b; });
  return it != edges_.end() && it->e == e ? it : edges_.end();
}

void ShadowTree::add_black(Edge e, Length len) {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Entry& a, const Edge& b) { return a.e < b; });
  if (it != edges_.end() && it->e == e)
    throw InvariantFailure("shadow edge added twice");
  edges_.insert(it, Entry{e, len, false});
}

void ShadowTree::add_red(Edge e, Length len) {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Entry& a, const Edge& b) { return a.e < b; });
  if (it != edges_.end() && it->e == e)
    throw InvariantFailure("shadow edge added twice");
  edges_.insert(it, Entry{e, len, true});
}

void ShadowTree::remove_black(Edge e) {
  auto it = find(e);
  if (it == edges_.end() || it->red)
    throw InvariantFailure("shadow is missing a black edge");
  edges_.erase(it);
}

void ShadowTree::recolor_red(Edge e) {
  auto it = find(e);
  if (it == edges_.end() || it->red)
    throw InvariantFailure("shadow is missing a black edge");
  it->red = true;
}

bool ShadowTree::has(Edge e) const { return find(e) != edges_.end(); }

bool ShadowTree::is_red(Edge e) const {
  auto it = find(e);
  if (it == edges_.end()) throw InvariantFailure("edge not in shadow");
  return it->red;
}

EdgeSet ShadowTree::black_edges() const {
  EdgeSet out;
  for (const Entry& en : edges_)
    if (!en.red) out.push_back(en.e);
  return out;  // edges_ sorted
}

EdgeSet ShadowTree::all_edges() const {
  EdgeSet out;
  out.reserve(edges_.size());
  for (const Entry& en : edges_) out.push_back(en.e);
  return out;
}

BigInt ShadowTree::potential() const {
  BigInt p = 1;
  for (const Entry& en : edges_) p *= en.len;
  return p;
}

BigInt phi(const MetricSpace& m, const EdgeSet& edges) {
  BigInt p = 1;
  for (const Edge& e : edges) p *= m.dist(e.u, e.v);
  return p;
}

int DynamicGreedyTree::degree(Vid v) const {
  int d = 0;
  for (const Edge& e : tree_) d += (e.u == v) + (e.v == v);
  return d;
}

std::vector<Vid> DynamicGreedyTree::neighbors(Vid v) const {
  std::vector<Vid> out;
  for (const Edge& e : tree_) {
    if (e.u == v) out.push_back(e.v);
    if (e.v == v) out.push_back(e.u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DynStep DynamicGreedyTree::add(
    Vid id, const std::vector<std::pair<Vid, Length>>& dists_to_alive) {
  DynStep step;
  step.was_add = true;
  step.id = id;
  step.tree_before = tree_;

  std::vector<Vid> alive_vec(alive_.begin(), alive_.end());
  m_ = m_.extend(id, dists_to_alive, alive_vec);

  if (tree_vertices_.empty()) {
    alive_.insert(id);
    tree_vertices_.insert(id);
    step.tree_after = tree_;
    return step;
  }

  Vid p = -1;
  Length best = kInf;
  for (Vid x : tree_vertices_) {  // ascending, so ties pick the smaller id
    Length d = m_.dist(id, x);
    if (d < best) {
      best = d;
      p = x;
    }
  }
  if (!is_alive(p))
    throw InvariantFailure("greedy attachment point is not alive");
  step.attach = p;

  alive_.insert(id);
  tree_vertices_.insert(id);
  Edge g = make_edge(id, p);
  insert_edge(tree_, g);
  shadow_.add_black(g, best);
  greedy_edges_.push_back({g, best});

  stabilize(step);
  step.tree_after = tree_;
  step.churn = symdiff_size(step.tree_before, step.tree_after);
  return step;
}

DynStep DynamicGreedyTree::remove(Vid id) {
  if (!is_alive(id)) throw UnknownOrDeleted(id);
  DynStep step;
  step.id = id;
  step.tree_before = tree_;

  alive_.erase(id);  // now a Steiner vertex of the tree
  stabilize(step);
  step.tree_after = tree_;
  step.churn = symdiff_size(step.tree_before, step.tree_after);
  return step;
}

void DynamicGreedyTree::stabilize(DynStep& step) {
  for (;;) {
    bool any = false;
    while (convert_once(step)) any = true;
    while (swap_once(step)) any = true;
    if (!any) break;
  }
}

// One extension-tree operation: drop a degree-1 Steiner leaf or splice out a
// degree-2 Steiner vertex, smallest id first.
bool DynamicGreedyTree::convert_once(DynStep& step) {
  if (alive_.empty() && tree_vertices_.size() == 1 && tree_.empty()) {
    tree_vertices_.clear();
    return true;
  }
  for (Vid v : tree_vertices_) {
    if (!steiner(v)) continue;
    int d = degree(v);
    if (d == 1) {
      Vid x = neighbors(v).front();
      Edge e = make_edge(v, x);
      remove_edge(tree_, e);
      shadow_.recolor_red(e);
      tree_vertices_.erase(v);
      ++step.leaf_drops;
      return true;
    }
    if (d == 2) {
      std::vector<Vid> nb = neighbors(v);
      Vid a = nb[0], b = nb[1];
      Edge bridge = make_edge(a, b);
      if (contains_edge(tree_, bridge))
        throw InvariantFailure("splice would duplicate a tree edge");
      remove_edge(tree_, make_edge(v, a));
      remove_edge(tree_, make_edge(v, b));
      insert_edge(tree_, bridge);
      shadow_.remove_black(make_edge(v, a));
      shadow_.remove_black(make_edge(v, b));
      shadow_.add_black(bridge, m_.dist(a, b));
      Length da = m_.dist(v, a), db = m_.dist(v, b);
      Vid closer = da < db ? a : (db < da ? b : std::min(a, b));
      shadow_.add_red(make_edge(v, closer), m_.dist(v, closer));
      tree_vertices_.erase(v);
      ++n_splices_;
      ++step.splices;
      return true;
    }
  }
  return false;
}

// One valid 2-swap: tree edges scanned by decreasing length, each against
// the shortest non-tree pair reconnecting the two sides.
bool DynamicGreedyTree::swap_once(DynStep& step) {
  if (tree_.empty()) return false;
  std::vector<std::pair<Length, Edge>> order;
  order.reserve(tree_.size());
  for (const Edge& e : tree_) order.push_back({m_.dist(e.u, e.v), e});
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  for (const auto& [elen, e] : order) {
    std::set<Vid> side;
    std::queue<Vid> q;
    q.push(e.u);
    side.insert(e.u);
    while (!q.empty()) {
      Vid cur = q.front();
      q.pop();
      for (const Edge& t : tree_) {
        if (t == e) continue;
        Vid nxt = -1;
        if (t.u == cur) nxt = t.v;
        if (t.v == cur) nxt = t.u;
        if (nxt >= 0 && side.insert(nxt).second) q.push(nxt);
      }
    }

    Length best = kInf;
    Edge bf{};
    for (Vid x : side)
      for (Vid y : tree_vertices_) {
        if (side.count(y)) continue;
        Edge f = make_edge(x, y);
        if (f == e || contains_edge(tree_, f)) continue;
        Length fl = m_.dist(f.u, f.v);
        if (fl < best || (fl == best && f < bf)) {
          best = fl;
          bf = f;
        }
      }
    if (best != kInf && elen >= 2 * best) {
      remove_edge(tree_, e);
      insert_edge(tree_, bf);
      shadow_.remove_black(e);
      shadow_.add_black(bf, best);
      ++n_swaps_;
      ++step.swaps;
      return true;
    }
  }
  return false;
}

std::vector<SwapCandidate> valid_swaps(const MetricSpace& m,
                                       const EdgeSet& tree,
                                       const std::set<Vid>& vertices) {
  std::vector<SwapCandidate> out;
  for (const Edge& e : tree) {
    Length elen = m.dist(e.u, e.v);
    std::set<Vid> side;
    std::queue<Vid> q;
    q.push(e.u);
    side.insert(e.u);
    while (!q.empty()) {
      Vid cur = q.front();
      q.pop();
      for (const Edge& t : tree) {
        if (t == e) continue;
        Vid nxt = -1;
        if (t.u == cur) nxt = t.v;
        if (t.v == cur) nxt = t.u;
        if (nxt >= 0 && side.insert(nxt).second) q.push(nxt);
      }
    }
    for (Vid x : side)
      for (Vid y : vertices) {
        if (side.count(y)) continue;
        Edge f = make_edge(x, y);
        if (f == e || contains_edge(tree, f)) continue;
        if (elen >= 2 * m.dist(f.u, f.v)) out.push_back({e, f});
      }
  }
  return out;
}

std::vector<SwapCandidate> DynamicGreedyTree::find_valid_swaps() const {
  return valid_swaps(m_, tree_, tree_vertices_);
}

BigInt DynamicGreedyTree::greedy_potential() const {
  BigInt p = 1;
  for (const auto& [e, len] : greedy_edges_) p *= len;
  return p;
}

}  // namespace dynsteiner
