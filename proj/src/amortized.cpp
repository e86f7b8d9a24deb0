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

#include "dynsteiner/amortized.hpp"

#include <algorithm>

namespace dynsteiner {

namespace {

// A level is bad when zombie clusters are at least as many as alive ones.
// Levels without any zombie cluster are always good; they carry no stale
// state whatever the alive count is.
int lowest_bad_level(const Hierarchy& h, int tau_max) {
  int top = std::max(h.s(), tau_max);
  for (int l = 0; l <= top; ++l) {
    int z = h.zombie_count(l);
    if (z > 0 && z >= h.alive_count(l)) return l;
  }
  return -1;
}

}  // namespace

AmortizedDeleter::AmortizedDeleter(MetricSpace m)
    : m_(std::move(m)),
      states_(VertexStates::initial(m_)),
      clustering_(Hierarchy::build(m_, states_)) {
  tree_ = alive_tree();
}

EdgeSet AmortizedDeleter::alive_tree() const {
  EdgeSet out;
  if (states_.alive_count() == 0) return out;
  for (const Cluster& c : clustering_.level(clustering_.r()).clusters) {
    if (!c.any_alive) continue;
    out.reserve(c.tree.size());
    for (const Edge& e : c.tree)
      out.push_back({m_.ids()[static_cast<std::size_t>(e.u)],
                     m_.ids()[static_cast<std::size_t>(e.v)]});
    break;  // single alive cluster at level r
  }
  sort_unique(out);
  return out;
}

std::vector<Vid> AmortizedDeleter::alive_ids() const {
  std::vector<Vid> out;
  for (int i = 0; i < m_.size(); ++i)
    if (states_.alive(i)) out.push_back(m_.ids()[static_cast<std::size_t>(i)]);
  return out;
}

AmortizedStep AmortizedDeleter::erase(Vid v) {
  int vi = m_.index_of(v);
  if (!states_.alive(vi)) throw AlreadyDeleted(v);

  AmortizedStep step;
  step.removed = v;
  step.tree_before = tree_;
  EdgeSet full_before = clustering_.all_edges();

  states_.kill(vi);
  Hierarchy hat = Hierarchy::build(m_, states_);
  int bad = lowest_bad_level(hat, m_.tau_max());
  if (bad < 0) {
    clustering_ = std::move(hat);
    // lazy case: tree untouched
  } else {
    step.case_two = true;
    step.lstar = bad;
    for (const Cluster& c : hat.level_clamped(bad).clusters) {
      if (cluster_status(c, bad) != ClusterKind::Zombie) continue;
      for (int u : c.members) {
        states_.lower_tau(u, 0);
        step.zapped.push_back(m_.ids()[static_cast<std::size_t>(u)]);
      }
    }
    std::sort(step.zapped.begin(), step.zapped.end());
    clustering_ = Hierarchy::build(m_, states_);
    tree_ = alive_tree();
  }

  step.tree_after = tree_;
  step.churn = symdiff_size(step.tree_before, step.tree_after);
  step.full_churn = symdiff_size(full_before, clustering_.all_edges());
  return step;
}

}  // namespace dynsteiner
