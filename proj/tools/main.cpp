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

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dynsteiner/amortized.hpp"
#include "dynsteiner/lipschitz.hpp"
#include "dynsteiner/runner.hpp"
#include "dynsteiner/trace.hpp"

namespace {

using namespace dynsteiner;

Geometry parse_geometry(const std::string& g) {
  if (g == "grid") return Geometry::Grid;
  if (g == "random") return Geometry::RandomMetric;
  throw InputError("unknown geometry '" + g + "'");
}

Algo parse_algo(const std::string& a) {
  auto v = algo_from_name(a);
  if (!v) throw InputError("unknown algorithm '" + a + "'");
  return *v;
}

int run_and_report(const Trace& trace, Algo algo, const RunOptions& opts,
                   const std::string& out_prefix) {
  RunResult res = run_trace(trace, algo, opts);
  std::string csv = report_csv(res.steps);
  if (out_prefix.empty()) {
    std::cout << csv;
  } else {
    std::ofstream c(out_prefix + ".csv");
    if (!c) throw IoError("cannot write " + out_prefix + ".csv");
    c << csv;
    std::ofstream j(out_prefix + ".json");
    if (!j) throw IoError("cannot write " + out_prefix + ".json");
    j << summary_json(res).dump(2) << "\n";
  }
  if (res.summary.failures > 0) {
    std::cerr << algo_name(algo) << ": " << res.summary.failures
              << " invariant failure(s)\n";
    for (const StepReport& row : res.steps)
      for (const std::string& msg : row.failures)
        std::cerr << "  step " << row.t << ": " << msg << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online Steiner tree maintenance simulator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a request trace");
  std::uint64_t seed = 1;
  int n = 20;
  std::string geometry = "random";
  bool mixed = false;
  double p_del = 0.4;
  std::string order = "random";
  std::string out;
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--n", n, "vertex / request count");
  gen->add_option("--geometry", geometry, "grid | random");
  gen->add_flag("--mixed", mixed, "mixed additions and deletions");
  gen->add_option("--p-del", p_del, "deletion probability for mixed traces");
  gen->add_option("--order", order, "deletion order: random | sequential");
  gen->add_option("--out", out, "output file (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "replay a trace through an algorithm");
  std::string trace_path;
  std::string algo = "amortized";
  std::string checks = "fast";
  std::size_t opt_limit = 12;
  std::string out_prefix;
  bool fail_fast = false;
  bool dump_levels = false;
  run->add_option("--trace", trace_path, "trace file")->required();
  run->add_option("--algo", algo, "amortized | lipschitz | dynamic");
  run->add_option("--checks", checks, "fast | full");
  run->add_option("--opt-limit", opt_limit,
                  "exact oracle cutoff on the alive set (0 disables)");
  run->add_option("--out", out_prefix, "write <prefix>.csv and <prefix>.json");
  run->add_flag("--fail-fast", fail_fast, "stop at the first failed check");
  run->add_flag("--dump-levels", dump_levels, "per-level stats in the JSON");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run every invariant check and exit nonzero on failure");
  std::string v_trace;
  std::string v_algo;
  std::string v_dump;
  std::size_t v_opt_limit = 12;
  verify->add_option("--trace", v_trace, "trace file")->required();
  verify->add_option("--algo", v_algo,
                     "restrict to one algorithm (default: all that apply)");
  verify->add_option("--opt-limit", v_opt_limit, "exact oracle cutoff");
  verify->add_option("--dump-clustering", v_dump,
                     "write the final clustering as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "time one generated run");
  std::uint64_t b_seed = 1;
  int b_n = 40;
  std::string b_algo = "amortized";
  std::string b_geometry = "random";
  bench->add_option("--seed", b_seed, "generator seed");
  bench->add_option("--n", b_n, "vertex / request count");
  bench->add_option("--algo", b_algo, "amortized | lipschitz | dynamic");
  bench->add_option("--geometry", b_geometry, "grid | random");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Geometry g = parse_geometry(geometry);
      Trace t;
      if (mixed) {
        t = gen_mixed_trace(seed, n, g, static_cast<int>(p_del * 1000));
      } else {
        DeletionOrder ord = order == "sequential" ? DeletionOrder::Sequential
                                                  : DeletionOrder::Random;
        t = gen_deletion_trace(seed, n, g, ord);
      }
      if (out.empty()) {
        write_trace(std::cout, t);
      } else {
        write_trace_file(out, t);
      }
      return 0;
    }

    if (run->parsed()) {
      Trace t = read_trace_file(trace_path);
      RunOptions opts;
      opts.checks = checks == "full" ? CheckLevel::Full : CheckLevel::Fast;
      opts.opt_limit = opt_limit;
      opts.fail_fast = fail_fast;
      opts.level_dump = dump_levels;
      return run_and_report(t, parse_algo(algo), opts, out_prefix);
    }

    if (verify->parsed()) {
      Trace t = read_trace_file(v_trace);
      RunOptions opts;
      opts.checks = CheckLevel::Full;
      opts.opt_limit = v_opt_limit;
      std::vector<Algo> algos;
      if (!v_algo.empty()) {
        algos.push_back(parse_algo(v_algo));
      } else if (t.deletion_only()) {
        algos = {Algo::Amortized, Algo::Lipschitz};
      } else {
        algos = {Algo::Dynamic};
      }
      int rc = 0;
      for (Algo a : algos) {
        RunResult res = run_trace(t, a, opts);
        std::cout << algo_name(a) << ": " << res.summary.steps << " steps, "
                  << res.summary.failures << " failure(s)\n";
        for (const StepReport& row : res.steps)
          for (const std::string& msg : row.failures)
            std::cerr << "  step " << row.t << ": " << msg << "\n";
        if (res.summary.failures > 0) rc = 1;
        if (!v_dump.empty() && a != Algo::Dynamic) {
          MetricSpace m =
              MetricSpace::validate(t.init->points, t.init->dists);
          if (a == Algo::Amortized) {
            AmortizedDeleter d(m);
            for (const Request& r : t.requests)
              d.erase(std::get<DelRequest>(r).id);
            std::ofstream f(v_dump);
            f << d.clustering().dump(d.metric()).dump(2) << "\n";
          } else {
            LipschitzDeleter d(m);
            for (const Request& r : t.requests)
              d.erase(std::get<DelRequest>(r).id);
            std::ofstream f(v_dump);
            f << d.clustering().dump(d.metric()).dump(2) << "\n";
          }
        }
      }
      return rc;
    }

    if (bench->parsed()) {
      Algo a = parse_algo(b_algo);
      Geometry g = parse_geometry(b_geometry);
      Trace t = a == Algo::Dynamic ? gen_mixed_trace(b_seed, b_n, g)
                                   : gen_deletion_trace(b_seed, b_n, g);
      RunOptions opts;
      opts.opt_limit = 0;
      auto start = std::chrono::steady_clock::now();
      RunResult res = run_trace(t, a, opts);
      auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      std::cout << algo_name(a) << " n=" << b_n << ": " << res.summary.steps
                << " steps in " << us << " us ("
                << (res.summary.steps ? us / res.summary.steps : 0)
                << " us/step), total churn " << res.summary.total_churn
                << "\n";
      return res.summary.failures > 0 ? 1 : 0;
    }
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
