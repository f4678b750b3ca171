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

#include "transport/shortlist.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "transport/bench.hpp"
#include "transport/verify.hpp"

using namespace transport;
using testutil::make_problem;

TEST_CASE("default parameters follow the doubling rule") {
  const ShortlistParams p200 = default_params(200);
  CHECK(p200.listLength == 15);
  CHECK(p200.candidateStop == 15);
  CHECK(p200.batchFraction == 0.05);
  CHECK(default_params(100).listLength == 15);
  CHECK(default_params(400).listLength == 30);
  CHECK(default_params(800).listLength == 45);
  CHECK(default_params(1600).listLength == 60);
  CHECK(default_params(300).listLength == 23);  // 15 + floor(15*log2(1.5))
}

TEST_CASE("default parameters clamp to tiny instances") {
  const ShortlistParams tiny = default_params(4);
  CHECK(tiny.listLength == 4);
  CHECK(tiny.candidateStop == 4);
}

TEST_CASE("shortlists hold the cheapest destinations in cost order") {
  const Problem p = make_problem({1, 1}, {1, 1, 1}, {{5, 1, 3}, {2, 2, 2}});
  Problem balanced = p;
  balanced.supply[0] = 2;  // rebalance: supplies 2+1, demands 1+1+1
  const Shortlists sl = build_shortlists(balanced, 2);
  REQUIRE(sl.lists.size() == 2);
  REQUIRE(sl.lists[0].size() == 2);
  CHECK(sl.lists[0][0].dest == 1);
  CHECK(sl.lists[0][0].cost == 1);
  CHECK(sl.lists[0][1].dest == 2);
  CHECK(sl.lists[0][1].cost == 3);
  // All-equal costs: ties resolved by destination index.
  CHECK(sl.lists[1][0].dest == 0);
  CHECK(sl.lists[1][1].dest == 1);
}

TEST_CASE("a full-length shortlist is the sorted row") {
  std::mt19937_64 rng(1);
  const Problem p = testutil::random_integer_problem(rng, 3, 5);
  const Shortlists sl = build_shortlists(p, 5);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(sl.lists[i].size() == 5);
    for (std::size_t k = 1; k < sl.lists[i].size(); ++k) {
      const auto& prev = sl.lists[i][k - 1];
      const auto& next = sl.lists[i][k];
      CHECK((prev.cost < next.cost ||
             (prev.cost == next.cost && prev.dest < next.dest)));
    }
  }
}

TEST_CASE("with full shortlists the initial plan is the row-minimum plan") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 20; ++round) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const int n = 2 + static_cast<int>(rng() % 6);
    const Problem p = testutil::random_integer_problem(rng, m, n);
    const Shortlists sl = build_shortlists(p, n);
    const TransportPlan fromLists = shortlist_initial_plan(p, sl);
    const TransportPlan rowMin = build_initial_plan(p, InitRule::RowMinimum);
    CHECK(testutil::same_entries(fromLists, rowMin));
  }
}

TEST_CASE("single-origin instances have a forced shortlist plan") {
  const Problem p = make_problem({6}, {1, 2, 3}, {{9, 4, 7}});
  const Shortlists sl = build_shortlists(p, 1);
  const TransportPlan plan = shortlist_initial_plan(p, sl);
  REQUIRE(plan.size() == 3);
  CHECK(testutil::flow_at(plan, 0, 0) == 1);
  CHECK(testutil::flow_at(plan, 0, 1) == 2);
  CHECK(testutil::flow_at(plan, 0, 2) == 3);
}

TEST_CASE("the short shortlist fallback still yields a feasible basis") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 20; ++round) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const int n = 2 + static_cast<int>(rng() % 6);
    const Problem p = testutil::random_integer_problem(rng, m, n);
    const Shortlists sl = build_shortlists(p, 1);  // forces fallbacks
    const TransportPlan plan = shortlist_initial_plan(p, sl);
    CHECK(plan.size() == m + n - 1);
    CHECK(testutil::is_acyclic(plan));
    CHECK(feasibility_residual(p, plan) == 0.0);
  }
}

TEST_CASE("phase 3 is a fixed point on an already optimal plan") {
  const GeneratedInstance instance = generate_instance({30, 7});
  const Problem& p = instance.problem;
  TransportPlan plan = build_initial_plan(p, InitRule::LeastCost);
  solve_to_optimality(p, plan, PivotStrategy::MatrixMostNegative);
  Shortlists sl = build_shortlists(p, default_params(30).listLength);
  const SolveStats stats = shortlist_phase3(p, plan, sl, default_params(30));
  CHECK(stats.pivots == 0);
  // One candidate-free wrap over all shortlists.
  CHECK(sl.batchCursor >= 0);
}

TEST_CASE("phase 3 leaves no negative shortlist cell behind") {
  const GeneratedInstance instance = generate_instance({40, 11});
  const Problem& p = instance.problem;
  const ShortlistParams params = default_params(40);
  Shortlists sl = build_shortlists(p, params.listLength);
  TransportPlan plan = shortlist_initial_plan(p, sl);
  shortlist_phase3(p, plan, sl, params);
  const DualPrices duals = compute_duals(p, plan);
  const double eps = optimality_tolerance(p);
  for (int i = 0; i < p.numOrigins(); ++i) {
    for (const ShortlistEntry& e : sl.lists[i]) {
      if (plan.contains(i, e.dest)) continue;
      CHECK(relative_cost(p, duals, i, e.dest) >= -eps);
    }
  }
}

TEST_CASE("k = 1 degenerates to first-candidate batches and still converges") {
  const GeneratedInstance instance = generate_instance({25, 3});
  const Problem& p = instance.problem;
  ShortlistParams params = default_params(25);
  params.candidateStop = 1;
  const ShortlistRun run = solve_shortlist(p, params);
  const Certificate cert = check_certificate(p, run.plan);
  CHECK(cert.optimal(p));
}

TEST_CASE("phase objectives never increase and end at the optimum") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10; ++round) {
    const GeneratedInstance instance =
        generate_instance({40, instance_seed(99, 40, round)});
    const Problem& p = instance.problem;
    const ShortlistRun run = solve_shortlist(p);
    CHECK(run.phases[1].objectiveAfter >= run.phases[2].objectiveAfter);
    CHECK(run.phases[2].objectiveAfter >= run.phases[3].objectiveAfter);
    const Certificate cert = check_certificate(p, run.plan);
    CHECK(cert.optimal(p));
    // Cross-method agreement with the plain simplex path.
    TransportPlan reference = build_initial_plan(p, InitRule::LeastCost);
    solve_to_optimality(p, reference, PivotStrategy::MatrixMostNegative);
    const double a = objective(p, run.plan);
    const double b = objective(p, reference);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(std::abs(a), 1.0));
  }
}

TEST_CASE("full-width parameters match the plain simplex objective exactly") {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 10; ++round) {
    const Problem p = testutil::random_integer_problem(rng, 8, 8);
    const ShortlistRun run = solve_shortlist(p, ShortlistParams{8, 1, 1.0});
    TransportPlan reference = build_initial_plan(p, InitRule::RowMinimum);
    solve_to_optimality(p, reference, PivotStrategy::ModifiedRowMostNegative);
    CHECK(objective(p, run.plan) == objective(p, reference));
  }
}

TEST_CASE("solve_shortlist is deterministic") {
  const GeneratedInstance instance = generate_instance({35, 13});
  const ShortlistRun a = solve_shortlist(instance.problem);
  const ShortlistRun b = solve_shortlist(instance.problem);
  CHECK(testutil::same_entries(a.plan, b.plan));
  for (int phase = 0; phase < 4; ++phase) {
    CHECK(a.phases[phase].pivots == b.phases[phase].pivots);
    CHECK(a.phases[phase].cellsScanned == b.phases[phase].cellsScanned);
  }
}

TEST_CASE("a 1x1 instance solves with zero pivots in every phase") {
  const Problem p = make_problem({5}, {5}, {{7}});
  const ShortlistRun run = solve_shortlist(p);
  CHECK(run.phases[2].pivots == 0);
  CHECK(run.phases[3].pivots == 0);
  CHECK(objective(p, run.plan) == 35);
}

TEST_CASE("invalid parameters are rejected") {
  const Problem p = make_problem({5}, {5}, {{7}});
  CHECK_THROWS_AS(solve_shortlist(p, ShortlistParams{2, 1, 0.05}),
                  std::invalid_argument);  // s > n
  CHECK_THROWS_AS(solve_shortlist(p, ShortlistParams{1, 0, 0.05}),
                  std::invalid_argument);  // k < 1
  CHECK_THROWS_AS(solve_shortlist(p, ShortlistParams{1, 1, 0.0}),
                  std::invalid_argument);  // p out of range
}
