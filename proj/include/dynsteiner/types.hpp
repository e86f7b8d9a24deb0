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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

namespace dynsteiner {

using Vid = std::int64_t;     // vertex id
using Length = std::int64_t;  // integral edge length

// Undirected edge, stored with u < v.
struct Edge {
  Vid u = 0;
  Vid v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vid a, Vid b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Sorted, duplicate-free edge list. Forests and trees are represented this
// way; symmetric differences (change counting) are linear merges.
using EdgeSet = std::vector<Edge>;

inline void sort_unique(EdgeSet& es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
}

inline bool contains_edge(const EdgeSet& es, Edge e) {
  return std::binary_search(es.begin(), es.end(), e);
}

inline void insert_edge(EdgeSet& es, Edge e) {
  auto it = std::lower_bound(es.begin(), es.end(), e);
  if (it == es.end() || *it != e) es.insert(it, e);
}

inline void remove_edge(EdgeSet& es, Edge e) {
  auto it = std::lower_bound(es.begin(), es.end(), e);
  if (it != es.end() && *it == e) es.erase(it);
}

inline EdgeSet edge_minus(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline EdgeSet edge_union(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline EdgeSet edge_intersect(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline std::size_t symdiff_size(const EdgeSet& a, const EdgeSet& b) {
  std::size_t n = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++n;
      ++ia;
    } else if (*ib < *ia) {
      ++n;
      ++ib;
    } else {
      ++ia;
      ++ib;
    }
  }
  n += static_cast<std::size_t>(a.end() - ia) +
       static_cast<std::size_t>(b.end() - ib);
  return n;
}

inline bool is_subset(const EdgeSet& a, const EdgeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace dynsteiner
