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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "transport/init.hpp"

namespace transport {

ShortlistParams default_params(int n) {
  int s = 15;
  if (n > 200) {
    s = 15 + static_cast<int>(std::floor(15.0 * std::log2(n / 200.0)));
  }
  s = std::min(s, n);
  return ShortlistParams{s, s, 0.05};
}

namespace {

void validate_params(const ShortlistParams& params, int n) {
  if (params.listLength < 1 || params.listLength > n) {
    throw std::invalid_argument("shortlist length must be in [1, n]");
  }
  if (params.candidateStop < 1) {
    throw std::invalid_argument("candidate stop must be >= 1");
  }
  if (!(params.batchFraction > 0.0) || params.batchFraction > 1.0) {
    throw std::invalid_argument("batch fraction must be in (0, 1]");
  }
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

Shortlists build_shortlists(const Problem& problem, int listLength) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  if (listLength < 1 || listLength > n) {
    throw std::invalid_argument("shortlist length must be in [1, n]");
  }
  Shortlists shortlists;
  shortlists.lists.resize(m);
  std::vector<int> order(n);
  for (int i = 0; i < m; ++i) {
    std::iota(order.begin(), order.end(), 0);
    const auto cheaper = [&](int a, int b) {
      return problem.cost(i, a) < problem.cost(i, b) ||
             (problem.cost(i, a) == problem.cost(i, b) && a < b);
    };
    std::partial_sort(order.begin(), order.begin() + listLength, order.end(),
                      cheaper);
    auto& list = shortlists.lists[i];
    list.reserve(listLength);
    for (int k = 0; k < listLength; ++k) {
      list.push_back({order[k], problem.cost(i, order[k])});
    }
  }
  return shortlists;
}

TransportPlan shortlist_initial_plan(const Problem& problem,
                                     const Shortlists& shortlists) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  TransportPlan plan(m, n);
  Eigen::VectorXd supply = problem.supply;
  Eigen::VectorXd demand = problem.demand;
  for (int i = 0; i < m; ++i) {
    const auto& list = shortlists.lists[i];
    std::size_t cursor = 0;
    while (supply[i] > 0.0) {
      while (cursor < list.size() && demand[list[cursor].dest] <= 0.0) ++cursor;
      int j = -1;
      if (cursor < list.size()) {
        j = list[cursor].dest;
      } else {
        // Shortlist exhausted: cheapest remaining destination of the row.
        double bestCost = std::numeric_limits<double>::infinity();
        for (int c = 0; c < n; ++c) {
          if (demand[c] > 0.0 && problem.cost(i, c) < bestCost) {
            bestCost = problem.cost(i, c);
            j = c;
          }
        }
        if (j < 0) break;
      }
      const double amount = std::min(supply[i], demand[j]);
      plan.add(i, j, amount);
      supply[i] -= amount;
      demand[j] -= amount;
    }
  }
  repair_degeneracy(plan);
  return plan;
}

SolveStats shortlist_phase3(const Problem& problem, TransportPlan& plan,
                            Shortlists& shortlists,
                            const ShortlistParams& params) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  validate_params(params, n);
  const double eps = optimality_tolerance(problem);
  const int batchBudget =
      std::max(1, static_cast<int>(std::ceil(params.batchFraction * m)));
  const long long pivotCap = 5000LL * (m + n);
  SolveStats stats;
  DualPrices duals = compute_duals(problem, plan);

  // Consecutive shortlists scanned without finding a candidate, under duals
  // unchanged since the scan; m of them in a row proves no shortlist cell
  // has a negative relative cost.
  int consecutiveFree = 0;
  while (consecutiveFree < m) {
    double bestR = -eps;
    Cell best;
    bool found = false;
    int candidates = 0;
    int listsScanned = 0;
    int cur = shortlists.batchCursor;
    bool stop = false;
    while (listsScanned < batchBudget && !stop) {
      int listCandidates = 0;
      for (const ShortlistEntry& e : shortlists.lists[cur]) {
        if (plan.contains(cur, e.dest)) continue;
        ++stats.cellsScanned;
        const double r = e.cost - duals.u[cur] - duals.v[e.dest];
        if (r < -eps) {
          ++candidates;
          ++listCandidates;
          if (r < bestR) {
            bestR = r;
            best = {cur, e.dest};
            found = true;
          }
          if (candidates >= params.candidateStop) {
            stop = true;
            break;
          }
        }
      }
      ++listsScanned;
      consecutiveFree = listCandidates > 0 ? 0 : consecutiveFree + 1;
      cur = (cur + 1) % m;
      if (consecutiveFree >= m) stop = true;
    }
    shortlists.batchCursor = cur;
    if (found) {
      const Cycle cycle = find_cycle(plan, best);
      apply_pivot(plan, cycle);
      if (++stats.pivots > pivotCap) {
        throw IterationLimitError(
            "pivot limit of " + std::to_string(pivotCap) +
            " exceeded in shortlist improvement; suspected cycling");
      }
      duals = compute_duals(problem, plan);
      consecutiveFree = 0;
    }
  }
  return stats;
}

ShortlistRun solve_shortlist(const Problem& problem,
                             std::optional<ShortlistParams> paramsIn) {
  const int n = problem.numDestinations();
  const ShortlistParams params = paramsIn.value_or(default_params(n));
  validate_params(params, n);

  const double t0 = now_ms();
  Shortlists shortlists = build_shortlists(problem, params.listLength);
  const double t1 = now_ms();
  TransportPlan plan = shortlist_initial_plan(problem, shortlists);
  const double t2 = now_ms();
  const double objectiveInitial = objective(problem, plan);

  const double t3 = now_ms();
  const SolveStats restricted = shortlist_phase3(problem, plan, shortlists, params);
  const double t4 = now_ms();
  const double objectiveRestricted = objective(problem, plan);

  const double t5 = now_ms();
  const SolveStats full = solve_to_optimality(
      problem, plan, PivotStrategy::ModifiedRowMostNegative);
  const double t6 = now_ms();
  const double objectiveFinal = objective(problem, plan);

  ShortlistRun run{std::move(plan), {}};
  run.phases[0] = {t1 - t0, 0, 0, std::numeric_limits<double>::quiet_NaN()};
  run.phases[1] = {t2 - t1, 0, 0, objectiveInitial};
  run.phases[2] = {t4 - t3, restricted.pivots, restricted.cellsScanned,
                   objectiveRestricted};
  run.phases[3] = {t6 - t5, full.pivots, full.cellsScanned, objectiveFinal};
  return run;
}

}  // namespace transport
