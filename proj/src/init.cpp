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

#include "transport/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "union_find.hpp"

namespace transport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual tracking shared by all rules. Allocation amounts are always
// min(residual supply, residual demand), so one side reaches exactly zero
// and the comparisons against 0.0 below are exact.
struct Builder {
  explicit Builder(const Problem& p)
      : problem(p),
        supply(p.supply),
        demand(p.demand),
        plan(p.numOrigins(), p.numDestinations()),
        activeRows(p.numOrigins()),
        activeCols(p.numDestinations()) {}

  const Problem& problem;
  Eigen::VectorXd supply;
  Eigen::VectorXd demand;
  TransportPlan plan;
  int activeRows;
  int activeCols;

  double assign(int i, int j) {
    const double amount = std::min(supply[i], demand[j]);
    plan.add(i, j, amount);
    supply[i] -= amount;
    demand[j] -= amount;
    if (supply[i] == 0.0) --activeRows;
    if (demand[j] == 0.0) --activeCols;
    return amount;
  }

  // Cheapest destination with remaining demand in row i; -1 when none.
  int minCostCol(int i) const {
    const int n = problem.numDestinations();
    int best = -1;
    double bestCost = kInf;
    for (int j = 0; j < n; ++j) {
      if (demand[j] > 0.0 && problem.cost(i, j) < bestCost) {
        bestCost = problem.cost(i, j);
        best = j;
      }
    }
    return best;
  }

  // Cheapest origin with remaining supply in column j; -1 when none.
  int minCostRow(int j) const {
    const int m = problem.numOrigins();
    int best = -1;
    double bestCost = kInf;
    for (int i = 0; i < m; ++i) {
      if (supply[i] > 0.0 && problem.cost(i, j) < bestCost) {
        bestCost = problem.cost(i, j);
        best = i;
      }
    }
    return best;
  }
};

// Doubly linked ring of still-active indices, for the cyclic sweep rules.
// Removal is O(1) and keeps the ascending visiting order of the survivors.
class ActiveRing {
 public:
  explicit ActiveRing(int count) : next_(count), prev_(count), size_(count) {
    for (int k = 0; k < count; ++k) {
      next_[k] = (k + 1) % count;
      prev_[k] = (k + count - 1) % count;
    }
  }

  bool empty() const { return size_ == 0; }
  int next(int k) const { return next_[k]; }

  // Unlinks k and returns its successor, or -1 when the ring became empty.
  int remove(int k) {
    --size_;
    if (size_ == 0) return -1;
    const int succ = next_[k];
    next_[prev_[k]] = succ;
    prev_[succ] = prev_[k];
    return succ;
  }

 private:
  std::vector<int> next_;
  std::vector<int> prev_;
  int size_;
};

void northwestCorner(Builder& b) {
  const int m = b.problem.numOrigins();
  const int n = b.problem.numDestinations();
  int i = 0;
  int j = 0;
  while (i < m && j < n) {
    b.assign(i, j);
    const bool rowDone = b.supply[i] == 0.0;
    const bool colDone = b.demand[j] == 0.0;
    if (rowDone) ++i;
    if (colDone) ++j;
  }
}

// Shared core of LeastCost, ModifiedRussell and WeightedFrequency: sort all
// cells once ascending by the key matrix (ties row-major) and allocate in a
// single scan.
void leastCostSweep(Builder& b, const CostMatrix& key) {
  const int n = b.problem.numDestinations();
  const long long cells = static_cast<long long>(key.rows()) * n;
  std::vector<long long> order(cells);
  std::iota(order.begin(), order.end(), 0LL);
  const double* k = key.data();
  std::sort(order.begin(), order.end(), [k](long long a, long long c) {
    return k[a] < k[c] || (k[a] == k[c] && a < c);
  });
  for (const long long id : order) {
    if (b.activeRows == 0 || b.activeCols == 0) break;
    const int i = static_cast<int>(id / n);
    const int j = static_cast<int>(id % n);
    if (b.supply[i] > 0.0 && b.demand[j] > 0.0) b.assign(i, j);
  }
}

void houthakker(Builder& b) {
  const int m = b.problem.numOrigins();
  const int n = b.problem.numDestinations();
  std::vector<double> rowMin(m), colMin(n);
  while (b.activeRows > 0 && b.activeCols > 0) {
    for (int i = 0; i < m; ++i) {
      rowMin[i] = kInf;
      if (b.supply[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (b.demand[j] > 0.0) rowMin[i] = std::min(rowMin[i], b.problem.cost(i, j));
      }
    }
    for (int j = 0; j < n; ++j) {
      colMin[j] = kInf;
      if (b.demand[j] == 0.0) continue;
      for (int i = 0; i < m; ++i) {
        if (b.supply[i] > 0.0) colMin[j] = std::min(colMin[j], b.problem.cost(i, j));
      }
    }
    bool assigned = false;
    for (int i = 0; i < m; ++i) {
      if (rowMin[i] == kInf) continue;
      for (int j = 0; j < n; ++j) {
        if (colMin[j] == kInf) continue;
        const double c = b.problem.cost(i, j);
        if (c == rowMin[i] && c == colMin[j] && b.supply[i] > 0.0 && b.demand[j] > 0.0) {
          b.assign(i, j);
          assigned = true;
        }
      }
    }
    if (!assigned) break;
  }
}

void vogel(Builder& b) {
  const int m = b.problem.numOrigins();
  const int n = b.problem.numDestinations();

  // Cached smallest and second smallest residual cost per row/column,
  // rescanned only when the referenced index leaves the active set.
  struct TwoSmallest {
    double first = kInf;
    int firstIdx = -1;
    double second = kInf;
    int secondIdx = -1;

    double opportunity() const { return secondIdx < 0 ? first : second - first; }

    void consider(double c, int idx) {
      if (c < first) {
        second = first;
        secondIdx = firstIdx;
        first = c;
        firstIdx = idx;
      } else if (c < second) {
        second = c;
        secondIdx = idx;
      }
    }
  };
  std::vector<TwoSmallest> rowCache(m), colCache(n);

  auto rescanRow = [&](int i) {
    rowCache[i] = {};
    for (int j = 0; j < n; ++j) {
      if (b.demand[j] > 0.0) rowCache[i].consider(b.problem.cost(i, j), j);
    }
  };
  auto rescanCol = [&](int j) {
    colCache[j] = {};
    for (int i = 0; i < m; ++i) {
      if (b.supply[i] > 0.0) colCache[j].consider(b.problem.cost(i, j), i);
    }
  };
  for (int i = 0; i < m; ++i) rescanRow(i);
  for (int j = 0; j < n; ++j) rescanCol(j);

  while (b.activeRows > 0 && b.activeCols > 0) {
    double bestOpp = -kInf;
    bool pickRow = true;
    int pick = -1;
    for (int i = 0; i < m; ++i) {
      if (b.supply[i] > 0.0 && rowCache[i].firstIdx >= 0 &&
          rowCache[i].opportunity() > bestOpp) {
        bestOpp = rowCache[i].opportunity();
        pickRow = true;
        pick = i;
      }
    }
    for (int j = 0; j < n; ++j) {
      if (b.demand[j] > 0.0 && colCache[j].firstIdx >= 0 &&
          colCache[j].opportunity() > bestOpp) {
        bestOpp = colCache[j].opportunity();
        pickRow = false;
        pick = j;
      }
    }
    if (pick < 0) break;
    const int i = pickRow ? pick : colCache[pick].firstIdx;
    const int j = pickRow ? rowCache[pick].firstIdx : pick;
    b.assign(i, j);
    if (b.demand[j] == 0.0) {
      for (int r = 0; r < m; ++r) {
        if (b.supply[r] > 0.0 &&
            (rowCache[r].firstIdx == j || rowCache[r].secondIdx == j)) {
          rescanRow(r);
        }
      }
    }
    if (b.supply[i] == 0.0) {
      for (int c = 0; c < n; ++c) {
        if (b.demand[c] > 0.0 &&
            (colCache[c].firstIdx == i || colCache[c].secondIdx == i)) {
          rescanCol(c);
        }
      }
    }
  }
}

void russell(Builder& b) {
  const int m = b.problem.numOrigins();
  const int n = b.problem.numDestinations();
  std::vector<double> w(m), y(n);
  while (b.activeRows > 0 && b.activeCols > 0) {
    for (int i = 0; i < m; ++i) {
      w[i] = -kInf;
      if (b.supply[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (b.demand[j] > 0.0) w[i] = std::max(w[i], b.problem.cost(i, j));
      }
    }
    for (int j = 0; j < n; ++j) {
      y[j] = -kInf;
      if (b.demand[j] == 0.0) continue;
      for (int i = 0; i < m; ++i) {
        if (b.supply[i] > 0.0) y[j] = std::max(y[j], b.problem.cost(i, j));
      }
    }
    int bestI = -1;
    int bestJ = -1;
    double best = kInf;
    for (int i = 0; i < m; ++i) {
      if (b.supply[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        if (b.demand[j] == 0.0) continue;
        const double d = b.problem.cost(i, j) - w[i] - y[j];
        if (d < best) {
          best = d;
          bestI = i;
          bestJ = j;
        }
      }
    }
    if (bestI < 0) break;
    b.assign(bestI, bestJ);
  }
}

void rowMinimum(Builder& b) {
  const int m = b.problem.numOrigins();
  for (int i = 0; i < m; ++i) {
    while (b.supply[i] > 0.0) {
      const int j = b.minCostCol(i);
      if (j < 0) return;
      b.assign(i, j);
    }
  }
}

void columnMinimum(Builder& b) {
  const int n = b.problem.numDestinations();
  for (int j = 0; j < n; ++j) {
    while (b.demand[j] > 0.0) {
      const int i = b.minCostRow(j);
      if (i < 0) return;
      b.assign(i, j);
    }
  }
}

void modifiedRowMinimum(Builder& b) {
  ActiveRing rows(b.problem.numOrigins());
  int cur = 0;
  while (cur >= 0) {
    const int j = b.minCostCol(cur);
    if (j < 0) break;
    b.assign(cur, j);
    cur = b.supply[cur] == 0.0 ? rows.remove(cur) : rows.next(cur);
  }
}

void modifiedColumnMinimum(Builder& b) {
  ActiveRing cols(b.problem.numDestinations());
  int cur = 0;
  while (cur >= 0) {
    const int i = b.minCostRow(cur);
    if (i < 0) break;
    b.assign(i, cur);
    cur = b.demand[cur] == 0.0 ? cols.remove(cur) : cols.next(cur);
  }
}

void alternatingRowColumn(Builder& b) {
  ActiveRing rows(b.problem.numOrigins());
  ActiveRing cols(b.problem.numDestinations());
  int curRow = 0;
  int curCol = 0;
  bool rowsTurn = true;
  while (curRow >= 0 && curCol >= 0) {
    if (rowsTurn) {
      const int j = b.minCostCol(curRow);
      if (j < 0) break;
      b.assign(curRow, j);
      if (b.demand[j] == 0.0) {
        const int succ = cols.remove(j);
        if (curCol == j) curCol = succ;
      }
      curRow = b.supply[curRow] == 0.0 ? rows.remove(curRow) : rows.next(curRow);
    } else {
      const int i = b.minCostRow(curCol);
      if (i < 0) break;
      b.assign(i, curCol);
      if (b.supply[i] == 0.0) {
        const int succ = rows.remove(i);
        if (curRow == i) curRow = succ;
      }
      curCol = b.demand[curCol] == 0.0 ? cols.remove(curCol) : cols.next(curCol);
    }
    rowsTurn = !rowsTurn;
  }
}

void twoSmallestInRow(Builder& b) {
  const int n = b.problem.numDestinations();
  ActiveRing rows(b.problem.numOrigins());
  int cur = 0;
  while (cur >= 0) {
    int j1 = -1;
    int j2 = -1;
    double c1 = kInf;
    double c2 = kInf;
    for (int j = 0; j < n; ++j) {
      if (b.demand[j] <= 0.0) continue;
      const double c = b.problem.cost(cur, j);
      if (c < c1) {
        c2 = c1;
        j2 = j1;
        c1 = c;
        j1 = j;
      } else if (c < c2) {
        c2 = c;
        j2 = j;
      }
    }
    if (j1 < 0) break;
    b.assign(cur, j1);
    if (b.supply[cur] > 0.0 && j2 >= 0 && b.demand[j2] > 0.0) b.assign(cur, j2);
    cur = b.supply[cur] == 0.0 ? rows.remove(cur) : rows.next(cur);
  }
}

}  // namespace

CostMatrix russell_reduced_costs(const Problem& problem) {
  CostMatrix reduced = problem.cost;
  reduced.colwise() -= problem.cost.rowwise().maxCoeff();
  reduced.rowwise() -= problem.cost.colwise().maxCoeff();
  return reduced;
}

CostMatrix habr_reduced_costs(const Problem& problem) {
  CostMatrix reduced = problem.cost;
  reduced.colwise() -= problem.cost.rowwise().mean().eval();
  reduced.rowwise() -= problem.cost.colwise().mean().eval();
  return reduced;
}

std::string_view to_string(InitRule rule) {
  switch (rule) {
    case InitRule::NorthwestCorner: return "northwest";
    case InitRule::LeastCost: return "leastcost";
    case InitRule::Houthakker: return "houthakker";
    case InitRule::Vogel: return "vogel";
    case InitRule::Russell: return "russell";
    case InitRule::ModifiedRussell: return "modrussell";
    case InitRule::WeightedFrequency: return "habr";
    case InitRule::RowMinimum: return "rowmin";
    case InitRule::ModifiedRowMinimum: return "modrowmin";
    case InitRule::ColumnMinimum: return "colmin";
    case InitRule::ModifiedColumnMinimum: return "modcolmin";
    case InitRule::AlternatingRowColumn: return "altrowcol";
    case InitRule::TwoSmallestInRow: return "twosmallest";
  }
  return "unknown";
}

std::optional<InitRule> init_rule_from_string(std::string_view name) {
  for (const InitRule rule : kAllInitRules) {
    if (to_string(rule) == name) return rule;
  }
  return std::nullopt;
}

void repair_degeneracy(TransportPlan& plan) {
  const int m = plan.rows();
  const int n = plan.cols();
  if (plan.size() > m + n - 1) {
    throw StructuralError("plan has more than m+n-1 entries");
  }
  internal::UnionFind components(m + n);
  for (const PlanEntry& e : plan.entries()) {
    if (!components.unite(e.row, m + e.col)) {
      throw StructuralError("plan entries contain a cycle");
    }
  }
  int missing = m + n - 1 - plan.size();
  for (int i = 0; i < m && missing > 0; ++i) {
    for (int j = 0; j < n && missing > 0; ++j) {
      if (!plan.contains(i, j) && components.unite(i, m + j)) {
        plan.add(i, j, 0.0);
        --missing;
      }
    }
  }
}

TransportPlan build_initial_plan(const Problem& problem, InitRule rule) {
  Builder builder(problem);
  switch (rule) {
    case InitRule::NorthwestCorner:
      northwestCorner(builder);
      break;
    case InitRule::LeastCost:
      leastCostSweep(builder, problem.cost);
      break;
    case InitRule::Houthakker:
      houthakker(builder);
      break;
    case InitRule::Vogel:
      vogel(builder);
      break;
    case InitRule::Russell:
      russell(builder);
      break;
    case InitRule::ModifiedRussell:
      leastCostSweep(builder, russell_reduced_costs(problem));
      break;
    case InitRule::WeightedFrequency:
      leastCostSweep(builder, habr_reduced_costs(problem));
      break;
    case InitRule::RowMinimum:
      rowMinimum(builder);
      break;
    case InitRule::ModifiedRowMinimum:
      modifiedRowMinimum(builder);
      break;
    case InitRule::ColumnMinimum:
      columnMinimum(builder);
      break;
    case InitRule::ModifiedColumnMinimum:
      modifiedColumnMinimum(builder);
      break;
    case InitRule::AlternatingRowColumn:
      alternatingRowColumn(builder);
      break;
    case InitRule::TwoSmallestInRow:
      twoSmallestInRow(builder);
      break;
  }
  repair_degeneracy(builder.plan);
  return std::move(builder.plan);
}

}  // namespace transport
