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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynsteiner/trace.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

enum class Algo { Amortized, Lipschitz, Dynamic };

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

enum class CheckLevel { Fast, Full };

// Ratio tracked exactly as a fraction; den = 0 means nothing recorded yet.
struct Ratio {
  Length num = 0;
  Length den = 0;

  void update(Length n, Length d);  // keeps the max, zero denominators skipped
  double value() const { return den == 0 ? 0.0 : double(num) / double(den); }
  bool recorded() const { return den != 0; }
};

struct LevelStat {
  int level = 0;
  int m_above = 0;
  int alive = 0;
  bool good = true;
};

struct StepReport {
  int t = 0;
  Algo algo = Algo::Amortized;
  Length cost = 0;
  Length mst = 0;
  std::optional<Length> opt;
  std::optional<std::int64_t> lb_quarters;
  std::size_t churn = 0;
  long swaps = 0;
  long splices = 0;
  std::size_t zt = 0;
  std::vector<std::string> failures;
  std::optional<long> phi_bits;       // bit length of the shadow potential
  std::vector<LevelStat> levels;      // populated with RunOptions::level_dump

  friend bool operator==(const StepReport&, const StepReport&);
};

struct RunOptions {
  CheckLevel checks = CheckLevel::Fast;
  std::size_t opt_limit = 12;  // exact oracle used while |alive| <= limit; 0 disables
  bool fail_fast = false;      // throw InvariantFailure instead of recording
  bool level_dump = false;
};

struct RunSummary {
  Algo algo = Algo::Amortized;
  int steps = 0;
  Length init_cost = 0;
  std::size_t total_churn = 0;
  std::size_t max_churn = 0;
  std::size_t total_zt = 0;
  long total_swaps = 0;    // 2-swaps
  long total_splices = 0;  // degree-2 removals
  int case_two_steps = 0;
  int invariant_hypothesis_hits = 0;  // (bad level, m_{>l} >= 36) occurrences
  Ratio max_cost_over_mst;
  Ratio max_cost_over_opt;
  Ratio max_cost_over_lb;  // vs dual lower bound, in quarters
  std::size_t max_full_drop = 0;      // lipschitz |F'_{t-1} \ F'_t|
  std::size_t max_full_trailing = 0;  // lipschitz |F'_t \ F_t|
  int failures = 0;
};

struct RunResult {
  std::vector<StepReport> steps;
  RunSummary summary;
};

// Replays a trace through one algorithm, running the configured invariant
// suite after every step. Deletion-only algorithms require an init record
// and reject add requests; the dynamic algorithm rejects init records.
RunResult run_trace(const Trace& trace, Algo algo, const RunOptions& opts = {});

// CSV with the fixed header t,algo,cost,mst,opt,lb,churn,swaps,splices,zt,fails.
std::string report_csv(const std::vector<StepReport>& steps);
std::vector<StepReport> parse_report_csv(const std::string& text);

nlohmann::json summary_json(const RunResult& result);

}  // namespace dynsteiner
