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
#include <vector>

#include "dynsteiner/hierarchy.hpp"
#include "dynsteiner/metric.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

enum class OracleMethod { DreyfusWagner, Enumeration };

struct OracleResult {
  Length cost = 0;
  EdgeSet tree;  // spans the terminals, external ids
  OracleMethod method = OracleMethod::DreyfusWagner;
};

// Exact optimal Steiner tree over the metric closure, Steiner candidates
// drawn from the whole vertex set. Dynamic program over terminal subsets;
// throws TooManyTerminals above `terminal_limit`.
OracleResult opt_steiner(const MetricSpace& m, std::vector<Vid> terminals,
                         std::size_t terminal_limit = 12);

// Independent oracle: minimize MST(terminals + S) over every subset S of
// non-terminals. Exponential in the vertex count; meant for cross-checks.
OracleResult opt_steiner_enumerate(const MetricSpace& m,
                                   std::vector<Vid> terminals);

// Dual packing lower bound: sum over levels of (ceil(k_l/2) - 1) * 2^(l-2),
// where k_l counts non-dead clusters. Returned in quarters so the l = 0, 1
// terms stay exact.
std::int64_t dual_lower_bound_quarters(const Hierarchy& h);

}  // namespace dynsteiner
