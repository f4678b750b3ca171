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

#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"

using namespace transport;

TEST_CASE("instance generation is seed-deterministic") {
  const GeneratedInstance a = generate_instance({50, 12345});
  const GeneratedInstance b = generate_instance({50, 12345});
  CHECK(a.problem.supply == b.problem.supply);
  CHECK(a.problem.demand == b.problem.demand);
  CHECK(a.problem.cost == b.problem.cost);
  CHECK(a.originPoints == b.originPoints);
  const GeneratedInstance c = generate_instance({50, 12346});
  CHECK(a.problem.cost != c.problem.cost);
}

TEST_CASE("generated instances are balanced with distinct in-range points") {
  const GeneratedInstance g = generate_instance({100, 7});
  const Problem& p = g.problem;
  CHECK(p.numOrigins() == 100);
  CHECK(p.numDestinations() == 100);
  CHECK(p.supply.sum() == p.demand.sum());  // exact, integer masses
  CHECK(validate(p).empty());
  std::set<std::pair<int, int>> points;
  for (int k = 0; k < 100; ++k) {
    points.insert({g.originPoints(k, 0), g.originPoints(k, 1)});
    points.insert({g.destinationPoints(k, 0), g.destinationPoints(k, 1)});
    CHECK(g.originPoints(k, 0) >= 0);
    CHECK(g.originPoints(k, 0) <= 511);
    CHECK(g.destinationPoints(k, 1) >= 0);
    CHECK(g.destinationPoints(k, 1) <= 511);
  }
  CHECK(points.size() == 200);
  for (int i = 0; i < 100; ++i) {
    CHECK(p.supply[i] >= 1);
    CHECK(p.supply[i] == std::floor(p.supply[i]));
  }
  // Costs are Euclidean grid distances.
  const double dx = g.originPoints(0, 0) - g.destinationPoints(0, 0);
  const double dy = g.originPoints(0, 1) - g.destinationPoints(0, 1);
  CHECK(p.cost(0, 0) == std::sqrt(dx * dx + dy * dy));
}

TEST_CASE("masses fill the whole 1..255 range") {
  const GeneratedInstance g = generate_instance({3000, 99});
  CHECK(g.problem.supply.minCoeff() >= 1);
  // The adjusted last entry may exceed 255; everything else must not.
  CHECK(g.problem.supply.head(2999).maxCoeff() <= 255);
  CHECK(g.problem.supply.head(2999).maxCoeff() == 255);
}

TEST_CASE("instance seeds differ across sizes and reps") {
  std::set<std::uint64_t> seeds;
  for (const int n : {100, 200}) {
    for (int rep = 0; rep < 50; ++rep) {
      seeds.insert(instance_seed(1, n, rep));
    }
  }
  CHECK(seeds.size() == 100);
  CHECK(instance_seed(1, 100, 0) == instance_seed(1, 100, 0));
  CHECK(instance_seed(1, 100, 0) != instance_seed(2, 100, 0));
}

TEST_CASE("run_benchmark pairs methods on identical instances") {
  BenchConfig config;
  config.sizes = {15, 25};
  config.reps = 3;
  config.methods = {"leastcost", "northwest", "shortlist"};
  config.pivots = {PivotStrategy::ModifiedRowMostNegative,
                   PivotStrategy::MatrixMostNegative};
  config.baseSeed = 77;
  config.warmup = false;
  const std::vector<BenchRecord> records = run_benchmark(config);
  // 2 init rules x 2 pivots + shortlist = 5 rows per (size, rep).
  CHECK(records.size() == 2 * 3 * 5);
  for (int task = 0; task < 6; ++task) {
    const double reference = records[task * 5].objective;
    for (int r = 0; r < 5; ++r) {
      const BenchRecord& record = records[task * 5 + r];
      CHECK(std::abs(record.objective - reference) <=
            1e-9 * std::max(1.0, std::abs(reference)));
      CHECK(record.totalMs >= record.initMs);
      CHECK(record.seed == records[task * 5].seed);
    }
  }
}

TEST_CASE("parallel and sequential benchmarks agree on everything but time") {
  BenchConfig config;
  config.sizes = {20};
  config.reps = 4;
  config.methods = {"leastcost", "shortlist"};
  config.pivots = {PivotStrategy::ModifiedRowMostNegative};
  config.baseSeed = 5;
  config.warmup = false;
  const std::vector<BenchRecord> sequential = run_benchmark(config);
  config.workers = 4;
  const std::vector<BenchRecord> parallel = run_benchmark(config);
  REQUIRE(sequential.size() == parallel.size());
  for (std::size_t k = 0; k < sequential.size(); ++k) {
    CHECK(sequential[k].method == parallel[k].method);
    CHECK(sequential[k].n == parallel[k].n);
    CHECK(sequential[k].rep == parallel[k].rep);
    CHECK(sequential[k].seed == parallel[k].seed);
    CHECK(sequential[k].pivots == parallel[k].pivots);
    CHECK(sequential[k].cellsScanned == parallel[k].cellsScanned);
    CHECK(sequential[k].objective == parallel[k].objective);
  }
}

TEST_CASE("CSV round-trips records") {
  BenchConfig config;
  config.sizes = {12};
  config.reps = 2;
  config.methods = {"vogel"};
  config.pivots = {PivotStrategy::FirstNegative};
  config.warmup = false;
  const std::vector<BenchRecord> records = run_benchmark(config);
  std::stringstream buffer;
  write_csv(buffer, records, config.baseSeed);
  const std::string text = buffer.str();
  CHECK(text.find("# generator=mt19937_64-rej-v1") != std::string::npos);
  CHECK(text.find("method,pivot,n,rep,seed,init_ms,total_ms,pivots,"
                  "cells_scanned,objective") != std::string::npos);
  const std::vector<BenchRecord> back = read_csv(buffer);
  REQUIRE(back.size() == records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(back[k].method == records[k].method);
    CHECK(back[k].pivot == records[k].pivot);
    CHECK(back[k].seed == records[k].seed);
    CHECK(back[k].pivots == records[k].pivots);
  }
}

TEST_CASE("power-law fit recovers exact synthetic data") {
  const std::vector<std::pair<double, double>> cubic = {
      {100, 2e6}, {200, 1.6e7}, {400, 1.28e8}};  // r = 2 n^3
  const FitResult fit = fit_power_law(cubic);
  CHECK(fit.factor == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.exponent == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.logResidual <= 1e-20);
}

TEST_CASE("constant runtimes fit a zero exponent") {
  const std::vector<std::pair<double, double>> flat = {
      {100, 5.0}, {200, 5.0}, {400, 5.0}};
  const FitResult fit = fit_power_law(flat);
  CHECK(fit.exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.factor == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("power-law fit rejects degenerate inputs") {
  CHECK_THROWS_AS(fit_power_law(std::vector<std::pair<double, double>>{{100, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      fit_power_law(std::vector<std::pair<double, double>>{{100, 1.0}, {100, 2.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fit_power_law(std::vector<std::pair<double, double>>{{100, 0.0}, {200, 2.0}}),
      std::invalid_argument);
}

TEST_CASE("mean_runtime_by_size filters and averages") {
  std::vector<BenchRecord> records;
  for (int rep = 0; rep < 2; ++rep) {
    BenchRecord r;
    r.method = "leastcost";
    r.pivot = "modrow";
    r.n = 100;
    r.totalMs = 10.0 + rep * 2;  // mean 11
    records.push_back(r);
  }
  BenchRecord other;
  other.method = "vogel";
  other.pivot = "modrow";
  other.n = 100;
  other.totalMs = 99;
  records.push_back(other);
  const auto means = mean_runtime_by_size(records, "leastcost", "modrow");
  REQUIRE(means.size() == 1);
  CHECK(means[0].first == 100);
  CHECK(means[0].second == 11.0);
}
