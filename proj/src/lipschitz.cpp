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

#include "dynsteiner/lipschitz.hpp"

#include <algorithm>
#include <string>

namespace dynsteiner {

LipschitzDeleter::LipschitzDeleter(MetricSpace m, LipschitzConfig cfg)
    : m_(std::move(m)),
      cfg_(cfg),
      states_(VertexStates::initial(m_)),
      clustering_(Hierarchy::build(m_, states_)) {
  forest_ = to_external(clustering_.edges_cumulative(clustering_.r()));
  full_forest_ = to_external(clustering_.all_edges());
}

EdgeSet LipschitzDeleter::to_external(const EdgeSet& internal) const {
  EdgeSet out;
  out.reserve(internal.size());
  for (const Edge& e : internal)
    out.push_back({m_.ids()[static_cast<std::size_t>(e.u)],
                   m_.ids()[static_cast<std::size_t>(e.v)]});
  sort_unique(out);
  return out;
}

std::vector<Vid> LipschitzDeleter::alive_ids() const {
  std::vector<Vid> out;
  for (int i = 0; i < m_.size(); ++i)
    if (states_.alive(i)) out.push_back(m_.ids()[static_cast<std::size_t>(i)]);
  return out;
}

LipschitzStep LipschitzDeleter::erase(Vid v) {
  int vi = m_.index_of(v);
  if (!states_.alive(vi)) throw AlreadyDeleted(v);

  LipschitzStep step;
  step.removed = v;
  step.forest_before = forest_;
  step.full_before = full_forest_;
  step.prev_final = clustering_;

  states_.kill(vi);
  Hierarchy hat = Hierarchy::build(m_, states_, clustering_);

  // Level l is bad when more than 3 * alive(l) edges sit above it. A drastic
  // step is warranted only when some bad level is heavy; take the highest.
  int lstar = -1;
  for (int l = 0; l <= hat.s(); ++l) {
    int ma = hat.m_above(l);
    if (ma > 3 * hat.alive_count(l) && ma >= cfg_.case_two_min_edges) lstar = l;
  }

  if (lstar < 0) {
    clustering_ = std::move(hat);
  } else {
    step.case_two = true;
    step.lstar = lstar;
    Skeleton sk = hat.skeleton(lstar);
    const Clustering& base = hat.level(lstar);
    std::vector<char> in_a(base.clusters.size(), 0);
    for (std::size_t ci = 0; ci < base.clusters.size(); ++ci)
      in_a[ci] = base.clusters[ci].any_alive ? 1 : 0;

    std::vector<int> picks;
    try {
      picks = find_low_degree(sk.num_nodes, sk.edges, in_a, cfg_.kill_count);
    } catch (const PreconditionViolated& e) {
      throw InvariantFailure(std::string("zombie selection failed: ") +
                             e.what());
    }
    for (int ci : picks) {
      const Cluster& c = base.clusters[static_cast<std::size_t>(ci)];
      if (cluster_status(c, lstar) != ClusterKind::Zombie)
        throw InvariantFailure("selected low-degree cluster is not a zombie");
      std::vector<Vid> ids;
      for (int u : c.members) {
        states_.lower_tau(u, lstar);
        Vid id = m_.ids()[static_cast<std::size_t>(u)];
        ids.push_back(id);
        step.zapped.push_back(id);
      }
      step.killed_clusters.push_back(std::move(ids));
    }
    std::sort(step.zapped.begin(), step.zapped.end());

    std::vector<int> bt = boundary_clusters(sk, picks);
    step.safety = classify_safe(hat, lstar, picks, bt);
    step.intermediate = std::move(hat);
    clustering_ = Hierarchy::build(m_, states_, step.prev_final);
  }

  forest_ = to_external(clustering_.edges_cumulative(clustering_.r()));
  full_forest_ = to_external(clustering_.all_edges());
  step.forest_after = forest_;
  step.full_after = full_forest_;
  step.churn = symdiff_size(step.forest_before, forest_);
  step.full_drop = edge_minus(step.full_before, full_forest_).size();
  step.full_add = edge_minus(full_forest_, step.full_before).size();
  return step;
}

}  // namespace dynsteiner
