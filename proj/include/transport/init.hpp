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

#ifndef TRANSPORT_INIT_HPP_
#define TRANSPORT_INIT_HPP_

#include <array>
#include <optional>
#include <string_view>

#include "transport/problem.hpp"

namespace transport {

/// Rules for constructing an initial basic feasible plan. Each rule is a pure
/// function of the Problem: identical inputs give bitwise-identical plans.
/// Ties are always broken by the smallest row index, then the smallest
/// column index.
enum class InitRule {
  NorthwestCorner,        // greedy sweep from the top-left cell
  LeastCost,              // one ascending sort of all cells, then a single scan
  Houthakker,             // rounds of mutually preferred (row- and column-minimal) cells
  Vogel,                  // max opportunity cost (second smallest minus smallest)
  Russell,                // argmin of c_ij - w_i - y_j with w, y recomputed per round
  ModifiedRussell,        // w, y computed once, then LeastCost on c_ij - w_i - y_j
  WeightedFrequency,      // LeastCost on c_ij - rowmean_i - colmean_j
  RowMinimum,             // exhaust each row at its cheapest residual cells
  ModifiedRowMinimum,     // cyclic row sweep, one allocation per visit
  ColumnMinimum,          // RowMinimum with rows and columns exchanged
  ModifiedColumnMinimum,  // ModifiedRowMinimum with rows and columns exchanged
  AlternatingRowColumn,   // alternate modified-row and modified-column visits
  TwoSmallestInRow,       // cyclic row sweep, up to two allocations per visit
};

inline constexpr std::array<InitRule, 13> kAllInitRules = {
    InitRule::NorthwestCorner,    InitRule::LeastCost,
    InitRule::Houthakker,         InitRule::Vogel,
    InitRule::Russell,            InitRule::ModifiedRussell,
    InitRule::WeightedFrequency,  InitRule::RowMinimum,
    InitRule::ModifiedRowMinimum, InitRule::ColumnMinimum,
    InitRule::ModifiedColumnMinimum, InitRule::AlternatingRowColumn,
    InitRule::TwoSmallestInRow,
};

std::string_view to_string(InitRule rule);
std::optional<InitRule> init_rule_from_string(std::string_view name);

/// Potential estimates used by Russell's rule: per-row and per-column
/// maxima subtracted from the costs, d_ij = c_ij - w_i - y_j.
CostMatrix russell_reduced_costs(const Problem& problem);

/// Weighted-frequency reduced costs: f_ij = c_ij - rowmean_i - colmean_j.
CostMatrix habr_reduced_costs(const Problem& problem);

/// Builds a basic feasible plan with the given rule and repairs degeneracy,
/// so the result always has exactly m+n-1 acyclic entries.
TransportPlan build_initial_plan(const Problem& problem, InitRule rule);

/// Extends a feasible acyclic plan to exactly m+n-1 entries by adding
/// zero-flow cells, scanning cells in row-major order and keeping only those
/// that join two distinct tree components. Throws StructuralError when the
/// input already has a cycle or more than m+n-1 entries.
void repair_degeneracy(TransportPlan& plan);

/// Thrown when a plan handed to the solver machinery is not the spanning
/// acyclic structure it is required to be.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace transport

#endif  // TRANSPORT_INIT_HPP_
