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

#include "transport/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "transport/init.hpp"
#include "transport/verify.hpp"

namespace transport {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, bound) by rejection, so results do not depend on the
// standard library's distribution implementations.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t raw = rng();
  while (raw < threshold) raw = rng();
  return raw % bound;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(uniform_below(
                  rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_sig6(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t baseSeed, int n, int rep) {
  std::uint64_t seed = splitmix64(baseSeed);
  seed = splitmix64(seed ^ static_cast<std::uint64_t>(n));
  seed = splitmix64(seed ^ static_cast<std::uint64_t>(rep));
  return seed;
}

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("instance size must be >= 1");
  if (spec.gridSize < 1 ||
      2LL * spec.n > static_cast<long long>(spec.gridSize) * spec.gridSize) {
    throw std::invalid_argument("grid too small for 2n distinct points");
  }
  if (spec.massMin < 1 || spec.massMax < spec.massMin) {
    throw std::invalid_argument("invalid mass range");
  }
  const int n = spec.n;
  std::mt19937_64 rng(spec.seed);

  // 2n distinct grid cells: origins first, then destinations; a collision
  // with any previous point is redrawn.
  std::vector<bool> occupied(static_cast<std::size_t>(spec.gridSize) * spec.gridSize,
                             false);
  GeneratedInstance out;
  out.originPoints.resize(n, 2);
  out.destinationPoints.resize(n, 2);
  for (int k = 0; k < 2 * n; ++k) {
    int x = 0;
    int y = 0;
    while (true) {
      x = static_cast<int>(uniform_below(rng, spec.gridSize));
      y = static_cast<int>(uniform_below(rng, spec.gridSize));
      const std::size_t cell = static_cast<std::size_t>(x) * spec.gridSize + y;
      if (!occupied[cell]) {
        occupied[cell] = true;
        break;
      }
    }
    if (k < n) {
      out.originPoints(k, 0) = x;
      out.originPoints(k, 1) = y;
    } else {
      out.destinationPoints(k - n, 0) = x;
      out.destinationPoints(k - n, 1) = y;
    }
  }

  Problem& problem = out.problem;
  problem.supply.resize(n);
  problem.demand.resize(n);
  for (int i = 0; i < n; ++i) {
    problem.supply[i] = uniform_int(rng, spec.massMin, spec.massMax);
  }
  for (int j = 0; j < n; ++j) {
    problem.demand[j] = uniform_int(rng, spec.massMin, spec.massMax);
  }
  // Balance adjustment: the deficit side's last mass absorbs the difference.
  const double diff = problem.supply.sum() - problem.demand.sum();
  if (diff > 0) {
    problem.demand[n - 1] += diff;
  } else {
    problem.supply[n - 1] += -diff;
  }

  problem.cost.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const double xi = out.originPoints(i, 0);
    const double yi = out.originPoints(i, 1);
    for (int j = 0; j < n; ++j) {
      const double dx = xi - out.destinationPoints(j, 0);
      const double dy = yi - out.destinationPoints(j, 1);
      problem.cost(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return out;
}

namespace {

struct MethodRun {
  bool shortlist = false;
  InitRule rule = InitRule::LeastCost;
  PivotStrategy pivot = PivotStrategy::ModifiedRowMostNegative;
  std::string methodLabel;
  std::string pivotLabel;
};

std::vector<MethodRun> expand_methods(const BenchConfig& config) {
  std::vector<MethodRun> runs;
  for (const std::string& name : config.methods) {
    if (name == "shortlist") {
      MethodRun run;
      run.shortlist = true;
      run.methodLabel = "shortlist";
      run.pivotLabel = std::string(to_string(PivotStrategy::ModifiedRowMostNegative));
      runs.push_back(run);
      continue;
    }
    const std::optional<InitRule> rule = init_rule_from_string(name);
    if (!rule) throw std::invalid_argument("unknown method '" + name + "'");
    for (const PivotStrategy pivot : config.pivots) {
      MethodRun run;
      run.rule = *rule;
      run.pivot = pivot;
      run.methodLabel = name;
      run.pivotLabel = std::string(to_string(pivot));
      runs.push_back(run);
    }
  }
  if (runs.empty()) throw std::invalid_argument("no methods requested");
  return runs;
}

BenchRecord time_method(const Problem& problem, const MethodRun& run,
                        const std::optional<ShortlistParams>& params) {
  BenchRecord record;
  record.method = run.methodLabel;
  record.pivot = run.pivotLabel;
  try {
    if (run.shortlist) {
      const double t0 = now_ms();
      const ShortlistRun result = solve_shortlist(problem, params);
      const double t1 = now_ms();
      record.initMs = result.phases[0].timeMs + result.phases[1].timeMs;
      record.totalMs = t1 - t0;
      const SolveStats totals = result.totals();
      record.pivots = totals.pivots;
      record.cellsScanned = totals.cellsScanned;
      record.objective = objective(problem, result.plan);
    } else {
      const double t0 = now_ms();
      TransportPlan plan = build_initial_plan(problem, run.rule);
      const double t1 = now_ms();
      const SolveStats stats = solve_to_optimality(problem, plan, run.pivot);
      const double t2 = now_ms();
      record.initMs = t1 - t0;
      record.totalMs = t2 - t0;
      record.pivots = stats.pivots;
      record.cellsScanned = stats.cellsScanned;
      record.objective = objective(problem, plan);
    }
  } catch (const std::exception&) {
    record.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return record;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  if (config.sizes.empty()) throw std::invalid_argument("no sizes requested");
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  const std::vector<MethodRun> runs = expand_methods(config);
  const int sizeCount = static_cast<int>(config.sizes.size());
  const int runCount = static_cast<int>(runs.size());
  const int taskCount = sizeCount * config.reps;
  std::vector<BenchRecord> records(
      static_cast<std::size_t>(taskCount) * runCount);

  // One task = one generated instance, solved by every method, so all rows
  // of a (size, rep) pair are paired on identical data.
  auto process_task = [&](int task) {
    const int sizeIdx = task / config.reps;
    const int rep = task % config.reps;
    const int n = config.sizes[sizeIdx];
    const std::uint64_t seed = instance_seed(config.baseSeed, n, rep);
    const GeneratedInstance instance = generate_instance({n, seed});
    for (int r = 0; r < runCount; ++r) {
      BenchRecord record =
          time_method(instance.problem, runs[r], config.shortlistParams);
      record.n = n;
      record.rep = rep;
      record.seed = seed;
      records[static_cast<std::size_t>(task) * runCount + r] = std::move(record);
    }
  };

  if (config.workers <= 1) {
    if (config.warmup) {
      for (const int n : config.sizes) {
        const GeneratedInstance warm =
            generate_instance({n, instance_seed(config.baseSeed, n, config.reps)});
        for (const MethodRun& run : runs) {
          time_method(warm.problem, run, config.shortlistParams);
        }
      }
    }
    for (int task = 0; task < taskCount; ++task) process_task(task);
  } else {
    std::atomic<int> nextTask{0};
    std::vector<std::thread> pool;
    const int workers = std::min(config.workers, taskCount);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const int task = nextTask.fetch_add(1);
          if (task >= taskCount) return;
          process_task(task);
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
  }
  return records;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records,
               std::uint64_t baseSeed) {
  out << "# generator=" << kGeneratorId << " base_seed=" << baseSeed << '\n';
  out << "method,pivot,n,rep,seed,init_ms,total_ms,pivots,cells_scanned,objective\n";
  for (const BenchRecord& r : records) {
    out << r.method << ',' << r.pivot << ',' << r.n << ',' << r.rep << ','
        << r.seed << ',' << format_sig6(r.initMs) << ','
        << format_sig6(r.totalMs) << ',' << r.pivots << ',' << r.cellsScanned
        << ',' << format_sig6(r.objective) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  bool sawHeader = false;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    if (!sawHeader) {
      sawHeader = true;  // column header
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 10) {
      throw ParseError(lineNo, "expected 10 CSV fields, got " +
                                   std::to_string(fields.size()));
    }
    BenchRecord r;
    r.method = fields[0];
    r.pivot = fields[1];
    try {
      r.n = std::stoi(fields[2]);
      r.rep = std::stoi(fields[3]);
      r.seed = std::stoull(fields[4]);
      r.initMs = std::stod(fields[5]);
      r.totalMs = std::stod(fields[6]);
      r.pivots = std::stoll(fields[7]);
      r.cellsScanned = std::stoll(fields[8]);
      r.objective = std::stod(fields[9]);
    } catch (const std::exception&) {
      throw ParseError(lineNo, "malformed CSV field");
    }
    records.push_back(std::move(r));
  }
  return records;
}

FitResult fit_power_law(std::span<const std::pair<double, double>> meansBySize) {
  if (meansBySize.size() < 2) {
    throw std::invalid_argument("power-law fit needs at least two sizes");
  }
  const Eigen::Index count = static_cast<Eigen::Index>(meansBySize.size());
  Eigen::VectorXd logN(count), logR(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    if (!(meansBySize[k].first > 0.0) || !(meansBySize[k].second > 0.0)) {
      throw std::invalid_argument("power-law fit needs positive sizes and runtimes");
    }
    logN[k] = std::log(meansBySize[k].first);
    logR[k] = std::log(meansBySize[k].second);
  }
  if ((logN.array() == logN[0]).all()) {
    throw std::invalid_argument("power-law fit needs two distinct sizes");
  }
  const double meanN = logN.mean();
  const double meanR = logR.mean();
  const Eigen::VectorXd dn = logN.array() - meanN;
  const Eigen::VectorXd dr = logR.array() - meanR;
  const double slope = dn.dot(dr) / dn.squaredNorm();
  const double intercept = meanR - slope * meanN;
  const Eigen::VectorXd residual = logR - (intercept + (slope * logN.array())).matrix();
  return FitResult{std::exp(intercept), slope, residual.squaredNorm()};
}

std::vector<std::pair<double, double>> mean_runtime_by_size(
    std::span<const BenchRecord> records, std::string_view method,
    std::string_view pivot) {
  std::map<int, std::pair<double, long long>> bySize;  // n -> (sum, count)
  for (const BenchRecord& r : records) {
    if (r.method != method) continue;
    if (!pivot.empty() && r.pivot != pivot) continue;
    if (std::isnan(r.objective)) continue;  // failed rows carry no timing
    auto& acc = bySize[r.n];
    acc.first += r.totalMs;
    acc.second += 1;
  }
  std::vector<std::pair<double, double>> means;
  means.reserve(bySize.size());
  for (const auto& [n, acc] : bySize) {
    means.emplace_back(n, acc.first / acc.second);
  }
  return means;
}

}  // namespace transport
