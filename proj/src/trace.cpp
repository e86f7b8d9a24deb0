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

#include "dynsteiner/trace.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dynsteiner {

using nlohmann::json;

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw TraceError("line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      std::string op = j.at("op").get<std::string>();
      if (op == "init") {
        if (t.init || !t.requests.empty())
          throw TraceError("init record must come first");
        InitRecord rec;
        for (const auto& p : j.at("points")) rec.points.push_back(p.get<Vid>());
        for (const auto& d : j.at("dist"))
          rec.dists.push_back(
              {d.at(0).get<Vid>(), d.at(1).get<Vid>(), d.at(2).get<Length>()});
        t.init = std::move(rec);
      } else if (op == "add") {
        AddRequest r;
        r.id = j.at("id").get<Vid>();
        if (j.contains("dist"))
          for (const auto& [key, val] : j.at("dist").items())
            r.dists.push_back({std::stoll(key), val.get<Length>()});
        std::sort(r.dists.begin(), r.dists.end());
        t.requests.push_back(std::move(r));
      } else if (op == "del") {
        t.requests.push_back(DelRequest{j.at("id").get<Vid>()});
      } else {
        throw TraceError("line " + std::to_string(lineno) + ": unknown op '" +
                         op + "'");
      }
    } catch (const json::exception& e) {
      throw TraceError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_trace(in);
}

void write_trace(std::ostream& out, const Trace& t) {
  if (t.init) {
    json dist = json::array();
    for (const DistEntry& d : t.init->dists)
      dist.push_back({d.u, d.v, d.d});
    json j = {{"op", "init"}, {"points", t.init->points}, {"dist", dist}};
    out << j.dump() << "\n";
  }
  for (const Request& r : t.requests) {
    if (const auto* add = std::get_if<AddRequest>(&r)) {
      json dist = json::object();
      for (const auto& [id, len] : add->dists) dist[std::to_string(id)] = len;
      json j = {{"op", "add"}, {"id", add->id}, {"dist", dist}};
      out << j.dump() << "\n";
    } else {
      const auto& del = std::get<DelRequest>(r);
      json j = {{"op", "del"}, {"id", del.id}};
      out << j.dump() << "\n";
    }
  }
}

void write_trace_file(const std::string& path, const Trace& t) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_trace(out, t);
}

void check_trace(const Trace& t) {
  std::set<Vid> alive;
  std::set<Vid> known;
  if (t.init) {
    for (Vid p : t.init->points)
      if (!known.insert(p).second)
        throw TraceError("duplicate point " + std::to_string(p));
    alive = known;
    for (const Request& r : t.requests) {
      const auto* del = std::get_if<DelRequest>(&r);
      if (!del) throw TraceError("add request in a deletion-only trace");
      if (!alive.erase(del->id))
        throw TraceError("deletion of non-alive vertex " +
                         std::to_string(del->id));
    }
    return;
  }
  for (const Request& r : t.requests) {
    if (const auto* add = std::get_if<AddRequest>(&r)) {
      if (!known.insert(add->id).second)
        throw TraceError("vertex " + std::to_string(add->id) + " added twice");
      std::set<Vid> covered;
      for (const auto& [id, len] : add->dists) {
        if (!alive.count(id))
          throw TraceError("add payload names non-alive vertex " +
                           std::to_string(id));
        if (len <= 0) throw TraceError("non-positive distance in add payload");
        if (!covered.insert(id).second)
          throw TraceError("duplicate distance in add payload");
      }
      if (covered.size() != alive.size())
        throw TraceError("add payload does not cover the alive set");
      alive.insert(add->id);
    } else {
      const auto& del = std::get<DelRequest>(r);
      if (!alive.erase(del.id))
        throw TraceError("deletion of non-alive vertex " +
                         std::to_string(del.id));
    }
  }
}

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int below(int k) {
    return k <= 1 ? 0 : static_cast<int>(eng() % static_cast<std::uint64_t>(k));
  }
};

std::vector<std::vector<Length>> ground_metric(Rng& rng, int n, Geometry geom) {
  std::vector<std::vector<Length>> d(
      static_cast<std::size_t>(n),
      std::vector<Length>(static_cast<std::size_t>(n), 0));
  if (geom == Geometry::Grid) {
    int side = std::max(4, 2 * n);
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> pts;
    while (static_cast<int>(pts.size()) < n) {
      std::pair<int, int> p{rng.below(side), rng.below(side)};
      if (used.insert(p).second) pts.push_back(p);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            std::abs(pts[static_cast<std::size_t>(i)].first -
                     pts[static_cast<std::size_t>(j)].first) +
            std::abs(pts[static_cast<std::size_t>(i)].second -
                     pts[static_cast<std::size_t>(j)].second);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                2 + rng.below(254);
    d = closure_repair(std::move(d));
  }
  return d;
}

}  // namespace

std::vector<std::vector<Length>> closure_repair(
    std::vector<std::vector<Length>> d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

Trace gen_deletion_trace(std::uint64_t seed, int n, Geometry geom,
                         DeletionOrder order) {
  if (n < 1) throw InputError("n must be positive");
  Rng rng(seed);
  auto d = ground_metric(rng, n, geom);

  Trace t;
  InitRecord init;
  for (int i = 0; i < n; ++i) init.points.push_back(i + 1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      init.dists.push_back(
          {i + 1, j + 1,
           d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
  t.init = std::move(init);

  std::vector<Vid> perm;
  for (int i = 0; i < n; ++i) perm.push_back(i + 1);
  if (order == DeletionOrder::Random)
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(rng.below(i + 1))]);
  for (Vid v : perm) t.requests.push_back(DelRequest{v});
  return t;
}

Trace gen_mixed_trace(std::uint64_t seed, int n, Geometry geom,
                      int p_del_permille) {
  if (n < 1) throw InputError("n must be positive");
  Rng rng(seed);
  auto d = ground_metric(rng, n, geom);

  Trace t;
  std::vector<Vid> alive;
  int next = 0;  // index of the next fresh vertex
  for (int step = 0; step < n; ++step) {
    bool do_del = alive.size() >= 2 && rng.below(1000) < p_del_permille;
    if (do_del) {
      int pick = rng.below(static_cast<int>(alive.size()));
      Vid id = alive[static_cast<std::size_t>(pick)];
      alive.erase(alive.begin() + pick);
      t.requests.push_back(DelRequest{id});
    } else {
      AddRequest r;
      r.id = next + 1;
      for (Vid a : alive)
        r.dists.push_back(
            {a, d[static_cast<std::size_t>(next)]
                 [static_cast<std::size_t>(a - 1)]});
      std::sort(r.dists.begin(), r.dists.end());
      t.requests.push_back(std::move(r));
      alive.push_back(static_cast<Vid>(next + 1));
      ++next;
    }
  }
  return t;
}

std::string geometry_name(Geometry g) {
  return g == Geometry::Grid ? "grid" : "random";
}

}  // namespace dynsteiner
