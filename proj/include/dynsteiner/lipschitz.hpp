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

// Tunable constants of the non-amortized deleter. Defaults are the analyzed
// values; the churn/drop/trailing bounds are what the per-step checks pin.
struct LipschitzConfig {
  int case_two_min_edges = 36;  // m_{>l} threshold for a drastic step
  int kill_count = 6;           // zombie clusters retired per drastic step
  int invariant_slack = 54;     // m_{>l} <= 3*a_l + slack on bad levels
  int churn_bound = 144;        // |F_{t-1} symdiff F_t|
  int drop_bound = 17;          // |F'_{t-1} \ F'_t|
  int trailing_bound = 55;      // |F'_t \ F_t|
};

struct LipschitzStep {
  Vid removed = 0;
  bool case_two = false;
  int lstar = -1;  // highest bad level with m_{>l} >= 36 (case two)
  std::vector<Vid> zapped;                        // Z_t
  std::vector<std::vector<Vid>> killed_clusters;  // vertex sets of Zcal_t
  Hierarchy prev_final;    // clustering before this step
  Hierarchy intermediate;  // clustering before the threshold drops (case two)
  SafeSplit safety;        // over intermediate's edges, internal indices
  std::size_t churn = 0;       // |F_{t-1} symdiff F_t|
  std::size_t full_drop = 0;   // |F'_{t-1} \ F'_t|
  std::size_t full_add = 0;    // |F'_t \ F'_{t-1}|
  EdgeSet forest_before, forest_after;  // F, external ids
  EdgeSet full_before, full_after;      // F', external ids
};

// Deletion-only maintainer with constant worst-case edge churn per step.
// Badness is measured by edge counts above a level versus alive clusters;
// a drastic step retires exactly kill_count low-degree zombie clusters at
// the highest heavy bad level by lowering their thresholds to that level.
// The output is the whole level-r forest.
class LipschitzDeleter {
 public:
  explicit LipschitzDeleter(MetricSpace m, LipschitzConfig cfg = {});

  LipschitzStep erase(Vid v);  // throws AlreadyDeleted / UnknownVertex

  const MetricSpace& metric() const { return m_; }
  const VertexStates& states() const { return states_; }
  const Hierarchy& clustering() const { return clustering_; }
  const LipschitzConfig& config() const { return cfg_; }
  const EdgeSet& forest() const { return forest_; }           // F_t
  const EdgeSet& full_forest() const { return full_forest_; }  // F'_t
  Length forest_cost() const { return m_.cost(forest_); }
  std::vector<Vid> alive_ids() const;
  int alive_count() const { return states_.alive_count(); }

 private:
  MetricSpace m_;
  LipschitzConfig cfg_;
  VertexStates states_;
  Hierarchy clustering_;
  EdgeSet forest_;       // external ids
  EdgeSet full_forest_;  // external ids

  EdgeSet to_external(const EdgeSet& internal) const;
};

}  // namespace dynsteiner
