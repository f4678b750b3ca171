// Copyright 2026 The transport Authors
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

// Command-line front end: generate instances, solve them with any method
// combination, verify plans, run timed benchmarks, and fit runtime scaling.
// Exit codes: 0 success, 1 usage or input error, 2 solver abort.
//
// Lines starting with '#' carry wall-clock timings and are the only
// non-deterministic part of the output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "transport/bench.hpp"
#include "transport/init.hpp"
#include "transport/problem.hpp"
#include "transport/shortlist.hpp"
#include "transport/simplex.hpp"
#include "transport/verify.hpp"

namespace {

using namespace transport;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolverAbort = 2;

std::string format_fit_value(double value) {
  char buf[48];
  if (value != 0.0 && (std::fabs(value) < 1e-3 || std::fabs(value) >= 1e6)) {
    std::snprintf(buf, sizeof(buf), "%.6e", value);
  } else {
    std::snprintf(buf, sizeof(buf), "%.6f", value);
  }
  return buf;
}

Problem load_problem(const std::string& path) {
  Problem problem = read_problem_file(path);
  const std::vector<std::string> violations = validate(problem);
  if (!violations.empty()) {
    std::string message = "invalid instance '" + path + "':";
    for (const std::string& v : violations) message += "\n  " + v;
    throw std::invalid_argument(message);
  }
  return problem;
}

struct GenerateArgs {
  int n = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string pointsOut;
  int grid = 512;
  int massMin = 1;
  int massMax = 255;
};

int run_generate(const GenerateArgs& args) {
  std::cout << "config: command=generate n=" << args.n << " seed=" << args.seed
            << " grid=" << args.grid << " mass=" << args.massMin << ".."
            << args.massMax << " out=" << args.out << '\n';
  const GeneratedInstance instance =
      generate_instance({args.n, args.seed, args.grid, args.massMin, args.massMax});
  write_problem_file(args.out, instance.problem);
  if (!args.pointsOut.empty()) {
    std::ofstream out(args.pointsOut);
    if (!out) throw std::invalid_argument("cannot open '" + args.pointsOut + "'");
    out << "kind,index,x,y\n";
    for (int i = 0; i < args.n; ++i) {
      out << "origin," << i << ',' << instance.originPoints(i, 0) << ','
          << instance.originPoints(i, 1) << '\n';
    }
    for (int j = 0; j < args.n; ++j) {
      out << "destination," << j << ',' << instance.destinationPoints(j, 0)
          << ',' << instance.destinationPoints(j, 1) << '\n';
    }
  }
  std::cout << "wrote " << args.out << '\n';
  return kExitOk;
}

struct SolveArgs {
  std::string input;
  std::string method = "shortlist";
  std::string pivot = "modrow";
  std::optional<int> s;
  std::optional<int> k;
  std::optional<double> p;
  bool emd = false;
  std::string planOut;
};

int run_solve(const SolveArgs& args) {
  const Problem problem = load_problem(args.input);
  const int n = problem.numDestinations();

  if (args.method == "shortlist") {
    ShortlistParams params = default_params(n);
    if (args.s) params.listLength = *args.s;
    if (args.k) params.candidateStop = *args.k;
    if (args.p) params.batchFraction = *args.p;
    std::cout << "config: command=solve input=" << args.input
              << " method=shortlist s=" << params.listLength
              << " k=" << params.candidateStop << " p=" << params.batchFraction
              << '\n';
    const ShortlistRun run = solve_shortlist(problem, params);
    const SolveStats totals = run.totals();
    const double value = objective(problem, run.plan);
    std::cout << "objective " << format_double(value) << '\n';
    if (args.emd) {
      std::cout << "emd " << format_double(value / problem.totalSupply()) << '\n';
    }
    std::cout << "pivots " << totals.pivots << '\n';
    std::cout << "cells_scanned " << totals.cellsScanned << '\n';
    for (int phase = 0; phase < 4; ++phase) {
      const PhaseStats& stats = run.phases[phase];
      std::cout << "phase " << phase + 1 << " pivots=" << stats.pivots
                << " cells_scanned=" << stats.cellsScanned;
      if (phase > 0) {
        std::cout << " objective=" << format_double(stats.objectiveAfter);
      }
      std::cout << '\n';
    }
    std::printf("# times_ms total=%.3f phases=%.3f,%.3f,%.3f,%.3f\n",
                run.phases[0].timeMs + run.phases[1].timeMs +
                    run.phases[2].timeMs + run.phases[3].timeMs,
                run.phases[0].timeMs, run.phases[1].timeMs,
                run.phases[2].timeMs, run.phases[3].timeMs);
    if (!args.planOut.empty()) write_plan_file(args.planOut, run.plan);
    return kExitOk;
  }

  const std::optional<InitRule> rule = init_rule_from_string(args.method);
  if (!rule) throw CLI::ValidationError("unknown method '" + args.method + "'");
  const std::optional<PivotStrategy> strategy =
      pivot_strategy_from_string(args.pivot);
  if (!strategy) throw CLI::ValidationError("unknown pivot '" + args.pivot + "'");
  std::cout << "config: command=solve input=" << args.input
            << " method=" << args.method << " pivot=" << args.pivot << '\n';
  const auto t0 = std::chrono::steady_clock::now();
  TransportPlan plan = build_initial_plan(problem, *rule);
  const auto t1 = std::chrono::steady_clock::now();
  const SolveStats stats = solve_to_optimality(problem, plan, *strategy);
  const auto t2 = std::chrono::steady_clock::now();
  const double value = objective(problem, plan);
  std::cout << "objective " << format_double(value) << '\n';
  if (args.emd) {
    std::cout << "emd " << format_double(value / problem.totalSupply()) << '\n';
  }
  std::cout << "pivots " << stats.pivots << '\n';
  std::cout << "cells_scanned " << stats.cellsScanned << '\n';
  const double initMs = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double totalMs = std::chrono::duration<double, std::milli>(t2 - t0).count();
  std::printf("# times_ms init=%.3f total=%.3f\n", initMs, totalMs);
  if (!args.planOut.empty()) write_plan_file(args.planOut, plan);
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  std::string plan;
};

int run_verify(const VerifyArgs& args) {
  const Problem problem = load_problem(args.input);
  const TransportPlan plan = read_plan_file(args.plan);
  std::cout << "config: command=verify input=" << args.input
            << " plan=" << args.plan << '\n';
  const Certificate cert = check_certificate(problem, plan);
  std::cout << "min_relative_cost " << format_double(cert.minRelativeCost) << '\n';
  if (cert.worstCell) {
    std::cout << "worst_cell " << cert.worstCell->row << ' '
              << cert.worstCell->col << '\n';
  } else {
    std::cout << "worst_cell none\n";
  }
  std::cout << "feasibility_residual " << format_double(cert.feasibilityResidual)
            << '\n';
  std::cout << "objective " << format_double(objective(problem, plan)) << '\n';
  std::cout << "optimal " << (cert.optimal(problem) ? "yes" : "no") << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::vector<int> sizes;
  int reps = 1;
  std::vector<std::string> methods = {"shortlist", "leastcost", "modrowmin",
                                      "modcolmin", "altrowcol"};
  std::vector<std::string> pivots = {"modrow"};
  std::uint64_t seed = 1;
  std::string out;
  int parallel = 1;
  bool noWarmup = false;
  std::optional<int> s;
  std::optional<int> k;
  std::optional<double> p;
};

int run_bench(const BenchArgs& args) {
  BenchConfig config;
  config.sizes = args.sizes;
  config.reps = args.reps;
  config.methods = args.methods;
  config.pivots.clear();
  for (const std::string& name : args.pivots) {
    const std::optional<PivotStrategy> strategy = pivot_strategy_from_string(name);
    if (!strategy) throw CLI::ValidationError("unknown pivot '" + name + "'");
    config.pivots.push_back(*strategy);
  }
  config.baseSeed = args.seed;
  config.workers = args.parallel;
  config.warmup = !args.noWarmup && args.parallel <= 1;
  if (args.s || args.k || args.p) {
    ShortlistParams params = default_params(args.sizes.empty() ? 1 : args.sizes[0]);
    if (args.s) params.listLength = *args.s;
    if (args.k) params.candidateStop = *args.k;
    if (args.p) params.batchFraction = *args.p;
    config.shortlistParams = params;
  }
  std::cout << "config: command=bench sizes=";
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    std::cout << (i ? "," : "") << config.sizes[i];
  }
  std::cout << " reps=" << config.reps << " methods=";
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    std::cout << (i ? "," : "") << config.methods[i];
  }
  std::cout << " pivots=";
  for (std::size_t i = 0; i < args.pivots.size(); ++i) {
    std::cout << (i ? "," : "") << args.pivots[i];
  }
  std::cout << " seed=" << config.baseSeed << " workers=" << config.workers
            << " warmup=" << (config.warmup ? "yes" : "no") << '\n';

  const std::vector<BenchRecord> records = run_benchmark(config);
  if (args.out.empty()) {
    write_csv(std::cout, records, config.baseSeed);
  } else {
    std::ofstream out(args.out);
    if (!out) throw std::invalid_argument("cannot open '" + args.out + "'");
    write_csv(out, records, config.baseSeed);
    std::cout << "wrote " << records.size() << " records to " << args.out << '\n';
  }
  return kExitOk;
}

struct FitArgs {
  std::string in;
  std::string method;
  std::string pivot;
};

int run_fit(const FitArgs& args) {
  std::ifstream in(args.in);
  if (!in) throw std::invalid_argument("cannot open '" + args.in + "'");
  const std::vector<BenchRecord> records = read_csv(in);
  std::cout << "config: command=fit in=" << args.in << " method=" << args.method
            << " pivot=" << (args.pivot.empty() ? "any" : args.pivot) << '\n';
  std::vector<std::pair<double, double>> means =
      mean_runtime_by_size(records, args.method, args.pivot);
  for (auto& [n, runtime] : means) runtime /= 1000.0;  // fit in seconds
  const FitResult fit = fit_power_law(means);
  std::cout << "sizes " << means.size() << " unit=s\n";
  std::cout << "c=" << format_fit_value(fit.factor)
            << " q=" << format_fit_value(fit.exponent)
            << " rss=" << format_fit_value(fit.logResidual) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and benchmark tooling for balanced transportation problems"};
  app.require_subcommand(1);

  GenerateArgs generateArgs;
  CLI::App* generate = app.add_subcommand("generate", "write a random instance file");
  generate->add_option("--n", generateArgs.n, "origins = destinations")->required();
  generate->add_option("--seed", generateArgs.seed, "instance seed");
  generate->add_option("--out", generateArgs.out, "instance file")->required();
  generate->add_option("--points", generateArgs.pointsOut, "point geometry CSV");
  generate->add_option("--grid", generateArgs.grid, "grid side length");
  generate->add_option("--mass-min", generateArgs.massMin, "smallest mass");
  generate->add_option("--mass-max", generateArgs.massMax, "largest mass");

  SolveArgs solveArgs;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--input", solveArgs.input, "instance file")->required();
  solve->add_option("--method", solveArgs.method,
                    "init rule name or 'shortlist'");
  solve->add_option("--pivot", solveArgs.pivot, "matrix | first | modrow");
  solve->add_option("--s", solveArgs.s, "shortlist length");
  solve->add_option("--k", solveArgs.k, "candidate stop count");
  solve->add_option("--p", solveArgs.p, "shortlist batch fraction");
  solve->add_flag("--emd", solveArgs.emd, "also print objective / total mass");
  solve->add_option("--plan-out", solveArgs.planOut, "write the optimal plan");

  VerifyArgs verifyArgs;
  CLI::App* verify = app.add_subcommand("verify", "certificate for a plan file");
  verify->add_option("--input", verifyArgs.input, "instance file")->required();
  verify->add_option("--plan", verifyArgs.plan, "plan file")->required();

  BenchArgs benchArgs;
  CLI::App* bench = app.add_subcommand("bench", "timed method sweep, CSV output");
  bench->add_option("--sizes", benchArgs.sizes, "problem sizes")
      ->required()
      ->delimiter(',');
  bench->add_option("--reps", benchArgs.reps, "instances per size");
  bench->add_option("--methods", benchArgs.methods, "method names")->delimiter(',');
  bench->add_option("--pivots", benchArgs.pivots, "pivot strategies")->delimiter(',');
  bench->add_option("--seed", benchArgs.seed, "base seed");
  bench->add_option("--out", benchArgs.out, "CSV path (stdout when absent)");
  bench->add_option("--parallel", benchArgs.parallel, "worker threads");
  bench->add_flag("--no-warmup", benchArgs.noWarmup, "skip warm-up runs");
  bench->add_option("--s", benchArgs.s, "shortlist length override");
  bench->add_option("--k", benchArgs.k, "candidate stop override");
  bench->add_option("--p", benchArgs.p, "batch fraction override");

  FitArgs fitArgs;
  CLI::App* fit = app.add_subcommand("fit", "power-law fit of a bench CSV");
  fit->add_option("--in", fitArgs.in, "bench CSV")->required();
  fit->add_option("--method", fitArgs.method, "method label")->required();
  fit->add_option("--pivot", fitArgs.pivot, "pivot label filter");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return run_generate(generateArgs);
    if (solve->parsed()) return run_solve(solveArgs);
    if (verify->parsed()) return run_verify(verifyArgs);
    if (bench->parsed()) return run_bench(benchArgs);
    if (fit->parsed()) return run_fit(fitArgs);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IterationLimitError& e) {
    std::cerr << "solver abort: " << e.what() << '\n';
    return kExitSolverAbort;
  } catch (const StructuralError& e) {
    std::cerr << "solver abort: " << e.what() << '\n';
    return kExitSolverAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
