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

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dynsteiner/metric.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

// Clusters, statuses and level edges below use internal vertex indices
// (0..n-1, ascending id order), which keeps all tie-breaking lexicographic
// in the external ids as well.

enum class ClusterKind { Alive, Zombie, Dead };

struct Cluster {
  std::vector<int> members;  // sorted internal indices
  EdgeSet tree;              // spanning tree on members, internal indices
  bool any_alive = false;
  int max_tau = -1;  // over deleted members only; -1 when none

  int min_vertex() const { return members.front(); }
};

// Status of a cluster at a level: alive if it holds an undeleted vertex,
// zombie if all deleted but some threshold exceeds the level, dead otherwise.
ClusterKind cluster_status(const Cluster& c, int level);
inline bool cluster_non_dead(const Cluster& c, int level) {
  return cluster_status(c, level) != ClusterKind::Dead;
}
std::string to_string(ClusterKind k);

struct Clustering {
  std::vector<Cluster> clusters;  // sorted by min_vertex

  // vertex -> cluster position
  std::vector<int> owner(int n) const;
};

// Level-l skeleton: one node per cluster of C_l, one edge per clustering
// edge added strictly above level l. Always a forest.
struct Skeleton {
  int level = 0;
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // cluster index pairs, a < b
  std::vector<int> degree;

  bool is_forest() const;
};

// A hierarchical clustering: per-level partitions C_0..C_s, each cluster
// carrying a spanning tree, together with the level at which every edge was
// added. C_0 is the singleton partition. Levels above s never change, so
// only 0..s are materialized.
class Hierarchy {
 public:
  // Fresh build: at each level l, repeatedly merge the closest pair of
  // l-non-dead clusters within distance 2^(l+1), joining them by the edge
  // between their closest vertices. Ties break lexicographically.
  static Hierarchy build(const MetricSpace& m, const VertexStates& st);

  // Rebuild against an old hierarchy: at each level j, first re-add old
  // edges (all levels <= j+1, scanned by level then endpoint pair) joining
  // j-non-dead clusters, then greedily merge j-non-dead clusters within
  // distance 2^j as in the fresh build.
  static Hierarchy build(const MetricSpace& m, const VertexStates& st,
                         const Hierarchy& old);

  int r() const { return r_; }  // lowest level with a single alive cluster
  int s() const { return s_; }  // lowest level with at most one non-dead cluster
  int num_levels() const { return static_cast<int>(levels_.size()); }

  const Clustering& level(int l) const;          // throws LevelOutOfRange
  const Clustering& level_clamped(int l) const;  // l >= s maps to s

  // Edges annotated with the level at which they were added, sorted by
  // (level, edge).
  const std::vector<std::pair<Edge, int>>& edge_levels() const {
    return edge_levels_;
  }
  EdgeSet edges_at(int l) const;          // E_l
  EdgeSet edges_cumulative(int l) const;  // E(C_l)
  EdgeSet all_edges() const;              // E(C_s)

  int m_at(int l) const;     // |E_l|
  int m_above(int l) const;  // m_{>l}; 0 for l >= s

  int alive_count(int l) const;
  int zombie_count(int l) const;
  int nondead_count(int l) const;

  Skeleton skeleton(int l) const;  // throws LevelOutOfRange

  // Structural self-check: partitions, refinement between levels, spanning
  // trees, cumulative edge sets. Throws InvariantFailure.
  void check_structure(const MetricSpace& m) const;

  nlohmann::json dump(const MetricSpace& m) const;

 private:
  std::vector<Clustering> levels_;
  std::vector<std::pair<Edge, int>> edge_levels_;
  std::vector<int> m_;  // edges added per level
  int r_ = 0;
  int s_ = 0;

  void finalize(const MetricSpace& m);
};

// Picks `want` nodes of degree 1 or 2 from B (the complement of A) in a
// forest, smallest node ids first. Requires at least 36 edges and more
// edges than 3|A|; throws PreconditionViolated when the hypothesis fails or
// fewer than `want` qualify.
std::vector<int> find_low_degree(int num_nodes,
                                 const std::vector<std::pair<int, int>>& edges,
                                 const std::vector<char>& in_a, int want = 6);

// Partition of all edges of `prev` into safe and unsafe, relative to the
// level-lstar skeleton, the killed zombie clusters Zt and their boundary Bt
// (cluster positions in prev.level(lstar)). An edge is safe iff it was
// added at level <= lstar or one endpoint lies in a cluster outside Zt+Bt.
struct SafeSplit {
  EdgeSet safe;
  EdgeSet unsafe;
};
SafeSplit classify_safe(const Hierarchy& prev, int lstar,
                        const std::vector<int>& zt,
                        const std::vector<int>& bt);

// Boundary clusters: neighbors of Zt in the level-lstar skeleton that are
// not themselves in Zt.
std::vector<int> boundary_clusters(const Skeleton& sk,
                                   const std::vector<int>& zt);

}  // namespace dynsteiner
