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

#ifndef TRANSPORT_SHORTLIST_HPP_
#define TRANSPORT_SHORTLIST_HPP_

#include <array>
#include <optional>

#include "transport/problem.hpp"
#include "transport/simplex.hpp"

namespace transport {

/// Tuning knobs of the shortlist solver: list length s, the candidate count
/// k that ends a search batch, and the fraction p of shortlists one batch
/// may search.
struct ShortlistParams {
  int listLength = 15;        // s, clamped to [1, n]
  int candidateStop = 15;     // k >= 1
  double batchFraction = 0.05;  // p in (0, 1]
};

/// Size-based defaults: s = 15 for n <= 200, growing by 15 per doubling of
/// n; k = s; p = 5%.
ShortlistParams default_params(int n);

struct ShortlistEntry {
  int dest = 0;
  double cost = 0.0;
};

/// Per-origin lists of the s cheapest destinations, each sorted ascending by
/// (cost, destination), plus the wrap-around cursor of the improvement
/// phase.
struct Shortlists {
  std::vector<std::vector<ShortlistEntry>> lists;
  int batchCursor = 0;
};

Shortlists build_shortlists(const Problem& problem, int listLength);

/// Feasible starting plan from the shortlists: each origin in turn is
/// exhausted into its cheapest shortlist destinations with remaining demand,
/// falling back to the cheapest remaining destination of the full row when
/// the shortlist offers none. Degeneracy-repaired to m+n-1 entries.
TransportPlan shortlist_initial_plan(const Problem& problem,
                                     const Shortlists& shortlists);

/// Improves the plan by pivoting on candidates discovered inside the
/// shortlists, in batches that end after k candidates or after ceil(p*m)
/// shortlists. Ends once a full wrap over all shortlists finds no candidate,
/// at which point no shortlist cell has relative cost below -eps.
SolveStats shortlist_phase3(const Problem& problem, TransportPlan& plan,
                            Shortlists& shortlists,
                            const ShortlistParams& params);

struct PhaseStats {
  double timeMs = 0.0;
  long long pivots = 0;
  long long cellsScanned = 0;
  double objectiveAfter = 0.0;  // NaN for the list-building phase
};

struct ShortlistRun {
  TransportPlan plan;
  std::array<PhaseStats, 4> phases;

  SolveStats totals() const {
    SolveStats stats;
    for (const PhaseStats& p : phases) {
      stats.pivots += p.pivots;
      stats.cellsScanned += p.cellsScanned;
    }
    return stats;
  }
};

/// The full four-phase run: build shortlists, derive the initial plan,
/// improve within shortlists, then finish on the complete matrix with the
/// ModifiedRowMostNegative strategy. The returned plan carries the global
/// dual certificate.
ShortlistRun solve_shortlist(const Problem& problem,
                             std::optional<ShortlistParams> params = {});

}  // namespace transport

#endif  // TRANSPORT_SHORTLIST_HPP_
