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

#pragma once

#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynsteiner/metric.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

using BigInt = boost::multiprecision::cpp_int;

// Spanning tree on every vertex ever added, mirroring the maintained tree.
// Stripping the red edges leaves exactly the maintained tree; red edges hang
// retained-deleted vertices off it. Edge lengths are captured at insertion
// (old distances never change).
class ShadowTree {
 public:
  void add_black(Edge e, Length len);
  void remove_black(Edge e);
  void recolor_red(Edge e);
  void add_red(Edge e, Length len);

  bool has(Edge e) const;
  bool is_red(Edge e) const;
  std::size_t size() const { return edges_.size(); }
  EdgeSet black_edges() const;
  EdgeSet all_edges() const;

  // Product of all edge lengths; 1 for the empty tree.
  BigInt potential() const;

 private:
  struct Entry {
    Edge e;
    Length len;
    bool red;
  };
  std::vector<Entry> edges_;  // sorted by edge

  std::vector<Entry>::iterator find(Edge e);
  std::vector<Entry>::const_iterator find(Edge e) const;
};

BigInt phi(const MetricSpace& m, const EdgeSet& edges);

struct DynStep {
  bool was_add = false;
  Vid id = 0;
  Vid attach = -1;  // greedy attachment point (adds)
  int swaps = 0;    // 2-swaps performed this step
  int splices = 0;  // degree-2 Steiner removals this step
  int leaf_drops = 0;
  std::size_t churn = 0;  // |T_{t-1} symdiff T_t|
  EdgeSet tree_before, tree_after;
};

struct SwapCandidate {
  Edge out;
  Edge in;
};

// Exhaustive 2-swap scan over an arbitrary tree: every tree edge against
// every non-tree pair of `vertices` reconnecting the split.
std::vector<SwapCandidate> valid_swaps(const MetricSpace& m,
                                       const EdgeSet& tree,
                                       const std::set<Vid>& vertices);

// Fully-dynamic Steiner tree: greedy attachment of arrivals, retention of
// deleted vertices while they have degree at least 3, and repeated valid
// 2-swaps until stable. The shadow tree and the swap/splice counters back
// the potential-based accounting checks.
class DynamicGreedyTree {
 public:
  DynStep add(Vid id, const std::vector<std::pair<Vid, Length>>& dists_to_alive);
  DynStep remove(Vid id);  // throws UnknownOrDeleted

  // Exhaustive scan for valid 2-swaps: tree edge e, non-tree pair f of tree
  // vertices reconnecting T - e, with d(e) >= 2 d(f). Empty after a step.
  std::vector<SwapCandidate> find_valid_swaps() const;

  const MetricSpace& metric() const { return m_; }
  const EdgeSet& tree() const { return tree_; }
  const std::set<Vid>& tree_vertices() const { return tree_vertices_; }
  const std::set<Vid>& alive() const { return alive_; }
  bool is_alive(Vid id) const { return alive_.count(id) != 0; }
  Length tree_cost() const { return m_.cost(tree_); }
  const ShadowTree& shadow() const { return shadow_; }

  long swap_count() const { return n_swaps_; }      // n_b
  long splice_count() const { return n_splices_; }  // n_d
  const std::vector<std::pair<Edge, Length>>& greedy_edges() const {
    return greedy_edges_;
  }
  BigInt greedy_potential() const;

 private:
  MetricSpace m_;
  std::set<Vid> alive_;
  EdgeSet tree_;
  std::set<Vid> tree_vertices_;
  ShadowTree shadow_;
  long n_swaps_ = 0;
  long n_splices_ = 0;
  std::vector<std::pair<Edge, Length>> greedy_edges_;

  int degree(Vid v) const;
  std::vector<Vid> neighbors(Vid v) const;
  bool steiner(Vid v) const { return alive_.count(v) == 0; }
  void stabilize(DynStep& step);
  bool convert_once(DynStep& step);  // one extension-tree operation
  bool swap_once(DynStep& step);     // one valid 2-swap
};

}  // namespace dynsteiner
