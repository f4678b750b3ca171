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

#ifndef TRANSPORT_VERIFY_HPP_
#define TRANSPORT_VERIFY_HPP_

#include <optional>

#include "transport/problem.hpp"
#include "transport/simplex.hpp"

namespace transport {

/// Optimality evidence for a basic plan: the smallest relative cost over all
/// non-basis cells (+inf when none exist, as in a 1x1 instance) together with
/// the cell attaining it, and the worst row/column sum deviation.
struct Certificate {
  double minRelativeCost = 0.0;
  std::optional<Cell> worstCell;
  double feasibilityResidual = 0.0;

  bool optimal(const Problem& problem) const {
    return minRelativeCost >= -optimality_tolerance(problem) &&
           feasibilityResidual <= balance_tolerance(problem);
  }
};

/// Recomputes duals from scratch and scans every cell of the matrix.
/// Independent of any solver state. Throws StructuralError when the plan is
/// not a spanning basis.
Certificate check_certificate(const Problem& problem, const TransportPlan& plan);

/// Exact optimum by enumerating every spanning tree of the complete
/// bipartite graph and solving each triangular flow system by leaf
/// stripping. Only trees whose flows are all >= -1e-12 count. Exact for
/// integer data. Throws std::invalid_argument when m^(n-1) * n^(m-1)
/// exceeds 1e6.
double brute_force_optimum(const Problem& problem);

}  // namespace transport

#endif  // TRANSPORT_VERIFY_HPP_
