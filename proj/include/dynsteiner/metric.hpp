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

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynsteiner/errors.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

struct DistEntry {
  Vid u = 0;
  Vid v = 0;
  Length d = 0;
};

// Exact finite metric over integer-indexed vertices, dense matrix storage.
// Values are immutable once built; growing the point set produces a new
// MetricSpace (extend), so snapshots can be shared freely across threads.
class MetricSpace {
 public:
  MetricSpace() = default;

  // Ingest entry point. Verifies symmetry, positivity and the triangle
  // inequality over all triples, then rescales every length by 2 if the
  // minimum off-diagonal distance is below 2. Vertex ids are kept in
  // ascending order.
  static MetricSpace validate(std::vector<Vid> points,
                              const std::vector<DistEntry>& entries);

  // Grows the metric by one vertex. `dists_to_alive` must cover exactly
  // `alive`; distances from new_id to the remaining (deleted) vertices are
  // inferred as min over alive s' of d(new_id,s') + d(s',s). Old distances
  // are unchanged. Triangle inequality is checked on {new_id} + alive.
  MetricSpace extend(Vid new_id,
                     const std::vector<std::pair<Vid, Length>>& dists_to_alive,
                     const std::vector<Vid>& alive) const;

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<Vid>& ids() const { return ids_; }
  bool has(Vid id) const { return index_.count(id) != 0; }
  int index_of(Vid id) const;

  Length at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  Length dist(Vid u, Vid v) const { return at(index_of(u), index_of(v)); }

  // max over pairs of ceil(log2 d); 0 when fewer than two vertices.
  int tau_max() const { return tau_max_; }
  bool rescaled() const { return rescaled_; }

  Length cost(const EdgeSet& edges) const;

  // Full triple loop; throws TriangleViolation on the first bad triple.
  void check_triangle() const;

 private:
  std::size_t n_ = 0;
  std::vector<Vid> ids_;
  std::unordered_map<Vid, int> index_;
  std::vector<Length> d_;  // n x n
  int tau_max_ = 0;
  bool rescaled_ = false;

  void recompute_tau_max();
};

int ceil_log2(Length x);

// Minimum spanning tree on a vertex subset under the metric. Deterministic:
// Kruskal over pairs ordered by (length, u, v). A singleton yields an empty
// edge set. Throws EmptySubset.
EdgeSet mst(const MetricSpace& m, const std::vector<Vid>& subset);

Length mst_cost(const MetricSpace& m, const std::vector<Vid>& subset);

// Per-vertex alive bit and threshold, indexed like the metric. The deletion
// algorithms keep b_v = 1 => tau_v = tau_max and only ever lower thresholds.
class VertexStates {
 public:
  static VertexStates initial(const MetricSpace& m);

  bool alive(int i) const { return alive_[static_cast<std::size_t>(i)] != 0; }
  int tau(int i) const { return tau_[static_cast<std::size_t>(i)]; }
  int tau_max() const { return tau_max_; }
  int size() const { return static_cast<int>(alive_.size()); }

  void kill(int i) { alive_[static_cast<std::size_t>(i)] = 0; }
  void lower_tau(int i, int level);

  int alive_count() const;
  void check_consistent() const;  // throws InvariantFailure

 private:
  std::vector<char> alive_;
  std::vector<int> tau_;
  int tau_max_ = 0;
};

}  // namespace dynsteiner
