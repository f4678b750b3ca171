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

#include "transport/simplex.hpp"

#include <algorithm>
#include <limits>

namespace transport {

std::string_view to_string(PivotStrategy strategy) {
  switch (strategy) {
    case PivotStrategy::MatrixMostNegative: return "matrix";
    case PivotStrategy::FirstNegative: return "first";
    case PivotStrategy::ModifiedRowMostNegative: return "modrow";
  }
  return "unknown";
}

std::optional<PivotStrategy> pivot_strategy_from_string(std::string_view name) {
  for (const PivotStrategy strategy : kAllPivotStrategies) {
    if (to_string(strategy) == name) return strategy;
  }
  return std::nullopt;
}

DualPrices compute_duals(const Problem& problem, const TransportPlan& basis) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  if (basis.rows() != m || basis.cols() != n) {
    throw StructuralError("basis shape does not match problem");
  }
  if (basis.size() != m + n - 1) {
    throw StructuralError("basis has " + std::to_string(basis.size()) +
                          " entries, expected " + std::to_string(m + n - 1));
  }
  DualPrices duals{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(n)};
  std::vector<char> originSet(m, 0), destSet(n, 0);
  // Nodes 0..m-1 are origins, m..m+n-1 destinations.
  std::vector<int> queue;
  queue.reserve(m + n);
  queue.push_back(0);
  originSet[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int node = queue[head];
    if (node < m) {
      for (const int h : basis.rowEntries(node)) {
        const int j = basis.entry(h).col;
        if (!destSet[j]) {
          destSet[j] = 1;
          duals.v[j] = problem.cost(node, j) - duals.u[node];
          queue.push_back(m + j);
        }
      }
    } else {
      const int j = node - m;
      for (const int h : basis.colEntries(j)) {
        const int i = basis.entry(h).row;
        if (!originSet[i]) {
          originSet[i] = 1;
          duals.u[i] = problem.cost(i, j) - duals.v[j];
          queue.push_back(i);
        }
      }
    }
  }
  if (queue.size() != static_cast<std::size_t>(m + n)) {
    throw StructuralError("basis does not span all origins and destinations");
  }
  return duals;
}

namespace {

// Most negative relative cost in row i over non-basis cells; ties keep the
// smallest column.
bool rowArgmin(const Problem& problem, const TransportPlan& basis,
               const DualPrices& duals, int i, double threshold,
               long long& cellsScanned, double& bestOut, int& colOut) {
  const int n = problem.numDestinations();
  const double ui = duals.u[i];
  double best = threshold;
  int bestCol = -1;
  for (int j = 0; j < n; ++j) {
    if (basis.contains(i, j)) continue;
    ++cellsScanned;
    const double r = problem.cost(i, j) - ui - duals.v[j];
    if (r < best) {
      best = r;
      bestCol = j;
    }
  }
  bestOut = best;
  colOut = bestCol;
  return bestCol >= 0;
}

}  // namespace

std::optional<Cell> select_pivot(const Problem& problem,
                                 const TransportPlan& basis,
                                 const DualPrices& duals,
                                 PivotStrategy strategy, PivotCursor& cursor,
                                 double negTolerance,
                                 long long& cellsScanned) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  switch (strategy) {
    case PivotStrategy::MatrixMostNegative: {
      double best = -negTolerance;
      Cell bestCell;
      bool found = false;
      for (int i = 0; i < m; ++i) {
        const double ui = duals.u[i];
        for (int j = 0; j < n; ++j) {
          if (basis.contains(i, j)) continue;
          ++cellsScanned;
          const double r = problem.cost(i, j) - ui - duals.v[j];
          if (r < best) {
            best = r;
            bestCell = {i, j};
            found = true;
          }
        }
      }
      if (found) return bestCell;
      return std::nullopt;
    }
    case PivotStrategy::FirstNegative: {
      for (int i = 0; i < m; ++i) {
        const double ui = duals.u[i];
        for (int j = 0; j < n; ++j) {
          if (basis.contains(i, j)) continue;
          ++cellsScanned;
          if (problem.cost(i, j) - ui - duals.v[j] < -negTolerance) {
            return Cell{i, j};
          }
        }
      }
      return std::nullopt;
    }
    case PivotStrategy::ModifiedRowMostNegative: {
      for (int k = 0; k < m; ++k) {
        const int i = (cursor.nextRow + k) % m;
        double best = 0.0;
        int bestCol = -1;
        if (rowArgmin(problem, basis, duals, i, -negTolerance, cellsScanned,
                      best, bestCol)) {
          cursor.nextRow = (i + 1) % m;
          return Cell{i, bestCol};
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Cycle find_cycle(const TransportPlan& basis, Cell entering) {
  if (basis.contains(entering.row, entering.col)) {
    throw StructuralError("entering cell is already a basis entry");
  }

  // Iterative DFS over the basis adjacency lists. A frame holds a cell of
  // the path and which direction leaves it next; moves alternate between
  // rows and columns, starting with the entering cell's row. A cell reached
  // by a row move that lies in the entering column closes the cycle.
  struct Frame {
    Cell cell;
    bool scanCol;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  std::vector<int> path;
  stack.push_back({entering, /*scanCol=*/false, 0});
  bool closed = false;
  while (!stack.empty() && !closed) {
    Frame& frame = stack.back();
    const std::span<const int> options = frame.scanCol
                                             ? basis.colEntries(frame.cell.col)
                                             : basis.rowEntries(frame.cell.row);
    bool advanced = false;
    while (frame.next < options.size()) {
      const int h = options[frame.next++];
      const PlanEntry& e = basis.entry(h);
      if (e.row == frame.cell.row && e.col == frame.cell.col) continue;
      path.push_back(h);
      const bool nextScanCol = !frame.scanCol;
      if (nextScanCol && e.col == entering.col) {
        closed = true;
      } else {
        stack.push_back({Cell{e.row, e.col}, nextScanCol, 0});
      }
      advanced = true;
      break;
    }
    if (!advanced) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
  }
  if (!closed) {
    throw StructuralError("no cycle through entering cell: basis is not spanning");
  }

  Cycle cycle{entering, std::move(path), 0.0};
  double theta = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cycle.handles.size(); k += 2) {
    theta = std::min(theta, basis.entry(cycle.handles[k]).flow);
  }
  cycle.theta = theta;
  return cycle;
}

Cell apply_pivot(TransportPlan& plan, const Cycle& cycle) {
  double minShrink = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cycle.handles.size(); k += 2) {
    minShrink = std::min(minShrink, plan.entry(cycle.handles[k]).flow);
  }
  if (!(cycle.theta == minShrink) || cycle.theta < 0.0) {
    throw std::invalid_argument("cycle theta does not match the plan");
  }
  std::size_t leavingIdx = 0;
  while (plan.entry(cycle.handles[leavingIdx]).flow != cycle.theta) {
    leavingIdx += 2;
  }
  for (std::size_t k = 0; k < cycle.handles.size(); ++k) {
    if (k == leavingIdx) continue;
    plan.addFlow(cycle.handles[k], k % 2 == 0 ? -cycle.theta : cycle.theta);
  }
  const int leavingHandle = cycle.handles[leavingIdx];
  const Cell leaving{plan.entry(leavingHandle).row, plan.entry(leavingHandle).col};
  plan.replaceEntry(leavingHandle, cycle.entering.row, cycle.entering.col,
                    cycle.theta);
  return leaving;
}

SolveStats solve_to_optimality(const Problem& problem, TransportPlan& plan,
                               PivotStrategy strategy) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  const double eps = optimality_tolerance(problem);
  const long long pivotCap = 5000LL * (m + n);
  PivotCursor cursor;
  SolveStats stats;
  while (true) {
    const DualPrices duals = compute_duals(problem, plan);
    const std::optional<Cell> entering = select_pivot(
        problem, plan, duals, strategy, cursor, eps, stats.cellsScanned);
    if (!entering) return stats;
    const Cycle cycle = find_cycle(plan, *entering);
    apply_pivot(plan, cycle);
    if (++stats.pivots > pivotCap) {
      throw IterationLimitError(
          "pivot limit of " + std::to_string(pivotCap) +
          " exceeded; suspected cycling on a degenerate basis");
    }
  }
}

}  // namespace transport
