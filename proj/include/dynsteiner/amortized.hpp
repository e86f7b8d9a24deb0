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

#include <vector>

#include "dynsteiner/hierarchy.hpp"
#include "dynsteiner/metric.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

struct AmortizedStep {
  Vid removed = 0;
  bool case_two = false;
  int lstar = -1;                // lowest bad level (case two)
  std::vector<Vid> zapped;       // Z_t: vertices whose threshold dropped to 0
  std::size_t churn = 0;         // |T_{t-1} symdiff T_t|
  std::size_t full_churn = 0;    // symdiff of the whole level-s forests
  EdgeSet tree_before;           // external ids
  EdgeSet tree_after;
};

// Deletion-only maintainer with constant amortized edge churn. Keeps every
// deleted vertex as a zombie until zombies would outnumber alive clusters
// at some level, then zeroes the thresholds of all zombie clusters at the
// lowest such level and rebuilds. The output tree is the component of the
// level-r forest containing the alive vertices.
class AmortizedDeleter {
 public:
  explicit AmortizedDeleter(MetricSpace m);

  AmortizedStep erase(Vid v);  // throws AlreadyDeleted / UnknownVertex

  const MetricSpace& metric() const { return m_; }
  const VertexStates& states() const { return states_; }
  const Hierarchy& clustering() const { return clustering_; }
  const EdgeSet& tree() const { return tree_; }  // external ids
  Length tree_cost() const { return m_.cost(tree_); }
  std::vector<Vid> alive_ids() const;
  int alive_count() const { return states_.alive_count(); }

 private:
  MetricSpace m_;
  VertexStates states_;
  Hierarchy clustering_;
  EdgeSet tree_;

  EdgeSet alive_tree() const;  // component of E(C_r) holding the alive set
};

}  // namespace dynsteiner
