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
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dynsteiner/metric.hpp"
#include "dynsteiner/types.hpp"

namespace dynsteiner {

// Replayable request stream, JSON Lines on disk:
//   {"op":"init","points":[1,2],"dist":[[1,2,4]]}     (deletion-only prologue)
//   {"op":"add","id":7,"dist":{"3":5,"4":9}}
//   {"op":"del","id":3}
struct AddRequest {
  Vid id = 0;
  std::vector<std::pair<Vid, Length>> dists;  // sorted by vertex id
};

struct DelRequest {
  Vid id = 0;
};

using Request = std::variant<AddRequest, DelRequest>;

struct InitRecord {
  std::vector<Vid> points;
  std::vector<DistEntry> dists;
};

struct Trace {
  std::optional<InitRecord> init;
  std::vector<Request> requests;

  bool deletion_only() const { return init.has_value(); }
};

Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const Trace& t);
void write_trace_file(const std::string& path, const Trace& t);

// Structural validation: ids are added before deletion, deleted at most
// once, add payloads cover exactly the alive set, init only with del
// requests. Throws TraceError.
void check_trace(const Trace& t);

enum class Geometry { Grid, RandomMetric };
enum class DeletionOrder { Random, Sequential };

// Deterministic generators. Grid instances are distinct lattice points under
// L1 distance; random metrics draw integer lengths and repair them by
// shortest-path closure. Byte-identical output for equal arguments.
Trace gen_deletion_trace(std::uint64_t seed, int n, Geometry geom,
                         DeletionOrder order = DeletionOrder::Random);

// Mixed additions/deletions; n requests, first is an add, deletions keep at
// least one vertex alive. p_del is in per-mille to stay float-free.
Trace gen_mixed_trace(std::uint64_t seed, int n, Geometry geom,
                      int p_del_permille = 400);

std::string geometry_name(Geometry g);

// Shortest-path closure; the random-metric generator runs raw draws through
// this to repair the triangle inequality.
std::vector<std::vector<Length>> closure_repair(
    std::vector<std::vector<Length>> d);

}  // namespace dynsteiner
