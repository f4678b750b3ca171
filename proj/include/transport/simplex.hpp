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

#ifndef TRANSPORT_SIMPLEX_HPP_
#define TRANSPORT_SIMPLEX_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "transport/init.hpp"
#include "transport/problem.hpp"

namespace transport {

/// Simplex multipliers of a basis: u_1 is fixed to 0 and all other prices
/// follow from u_i + v_j = c_ij on basis entries, solvable by a single
/// traversal of the basis tree.
struct DualPrices {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

enum class PivotStrategy {
  MatrixMostNegative,       // scan every cell, pick the global most negative
  FirstNegative,            // pivot on the first candidate found (row-major)
  ModifiedRowMostNegative,  // row-wise scan with a persistent wrap-around cursor
};

inline constexpr std::array<PivotStrategy, 3> kAllPivotStrategies = {
    PivotStrategy::MatrixMostNegative,
    PivotStrategy::FirstNegative,
    PivotStrategy::ModifiedRowMostNegative,
};

std::string_view to_string(PivotStrategy strategy);
std::optional<PivotStrategy> pivot_strategy_from_string(std::string_view name);

/// Next row to scan for ModifiedRowMostNegative; persists across pivots and
/// wraps modulo the row count.
struct PivotCursor {
  int nextRow = 0;
};

/// The unique alternating cycle created by inserting a non-basis cell into a
/// basis tree. `handles` lists the basis entries along the cycle after the
/// entering cell; flows at even positions (0, 2, ...) shrink by theta, the
/// entering cell and odd positions grow by it.
struct Cycle {
  Cell entering;
  std::vector<int> handles;
  double theta = 0.0;
};

/// Counters for the two runtime drivers: pivot operations performed and
/// cells for which a relative cost was computed.
struct SolveStats {
  long long pivots = 0;
  long long cellsScanned = 0;
};

/// Thrown when the pivot loop exceeds its iteration cap (suspected cycling).
class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves u_i + v_j = c_ij over the basis tree, breadth-first from origin 0
/// with u_0 = 0. Throws StructuralError when the basis is not a spanning
/// tree of the bipartite graph.
DualPrices compute_duals(const Problem& problem, const TransportPlan& basis);

inline double relative_cost(const Problem& problem, const DualPrices& duals,
                            int i, int j) {
  return problem.cost(i, j) - duals.u[i] - duals.v[j];
}

/// Picks the entering cell under the given strategy, or nullopt when no
/// non-basis cell has relative cost below -negTolerance (optimality).
/// `cellsScanned` grows by one per relative cost computed.
std::optional<Cell> select_pivot(const Problem& problem,
                                 const TransportPlan& basis,
                                 const DualPrices& duals,
                                 PivotStrategy strategy, PivotCursor& cursor,
                                 double negTolerance,
                                 long long& cellsScanned);

/// Finds the alternating cycle through `entering` by depth-first search over
/// the per-row and per-column basis entry lists, starting with a scan of the
/// entering cell's row. Theta is the minimum flow over the shrinking
/// positions.
Cycle find_cycle(const TransportPlan& basis, Cell entering);

/// Shifts theta around the cycle and swaps the first shrinking entry that
/// reached zero flow out of the basis in favor of the entering cell.
/// Returns the leaving cell. The entry count stays at m+n-1 and all row and
/// column sums are preserved.
Cell apply_pivot(TransportPlan& plan, const Cycle& cycle);

/// Runs pivots until no negative relative cost remains. The plan must be
/// basic feasible on entry and is optimal on return, with the dual
/// certificate re-checkable from scratch.
SolveStats solve_to_optimality(const Problem& problem, TransportPlan& plan,
                               PivotStrategy strategy);

}  // namespace transport

#endif  // TRANSPORT_SIMPLEX_HPP_
