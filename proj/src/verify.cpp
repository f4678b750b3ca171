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

#include "transport/verify.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "union_find.hpp"

namespace transport {

Certificate check_certificate(const Problem& problem, const TransportPlan& plan) {
  const DualPrices duals = compute_duals(problem, plan);
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  Certificate cert;
  cert.minRelativeCost = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (plan.contains(i, j)) continue;
      const double r = relative_cost(problem, duals, i, j);
      if (r < cert.minRelativeCost) {
        cert.minRelativeCost = r;
        cert.worstCell = Cell{i, j};
      }
    }
  }
  cert.feasibilityResidual = feasibility_residual(problem, plan);
  return cert;
}

namespace {

// Flows of a spanning tree are determined by peeling degree-one nodes: each
// leaf's edge must carry the leaf's full residual mass.
struct TreeEvaluator {
  explicit TreeEvaluator(const Problem& p)
      : problem(p),
        m(p.numOrigins()),
        n(p.numDestinations()),
        edgeA(m + n - 1),
        edgeB(m + n - 1),
        adjacency(m + n),
        degree(m + n),
        residual(m + n),
        flow(m + n - 1),
        removed(m + n - 1) {}

  const Problem& problem;
  int m;
  int n;
  std::vector<int> edgeA;             // origin node of each chosen edge
  std::vector<int> edgeB;             // destination node (offset by m)
  std::vector<std::vector<int>> adjacency;  // node -> incident edge ids
  std::vector<int> degree;
  std::vector<double> residual;
  std::vector<double> flow;
  std::vector<char> removed;

  // Returns the tree's objective, or nullopt when some flow is below -1e-12.
  std::optional<double> evaluate(const std::vector<int>& cells) {
    const int edges = m + n - 1;
    for (int node = 0; node < m + n; ++node) {
      adjacency[node].clear();
      degree[node] = 0;
      residual[node] = node < m ? problem.supply[node] : problem.demand[node - m];
    }
    for (int e = 0; e < edges; ++e) {
      edgeA[e] = cells[e] / n;
      edgeB[e] = m + cells[e] % n;
      adjacency[edgeA[e]].push_back(e);
      adjacency[edgeB[e]].push_back(e);
      ++degree[edgeA[e]];
      ++degree[edgeB[e]];
      removed[e] = 0;
    }
    std::vector<int> leaves;
    leaves.reserve(m + n);
    for (int node = 0; node < m + n; ++node) {
      if (degree[node] == 1) leaves.push_back(node);
    }
    for (std::size_t head = 0; head < leaves.size(); ++head) {
      const int leaf = leaves[head];
      if (degree[leaf] != 1) continue;
      int edge = -1;
      for (const int e : adjacency[leaf]) {
        if (!removed[e]) {
          edge = e;
          break;
        }
      }
      if (edge < 0) continue;
      const int other = edgeA[edge] == leaf ? edgeB[edge] : edgeA[edge];
      flow[edge] = residual[leaf];
      residual[other] -= residual[leaf];
      residual[leaf] = 0.0;
      removed[edge] = 1;
      if (--degree[other] == 1) leaves.push_back(other);
      degree[leaf] = 0;
    }
    double total = 0.0;
    for (int e = 0; e < edges; ++e) {
      if (flow[e] < -1e-12) return std::nullopt;
      total += problem.cost(edgeA[e], edgeB[e] - m) * flow[e];
    }
    return total;
  }
};

}  // namespace

double brute_force_optimum(const Problem& problem) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  const double treeCount = std::pow(m, n - 1) * std::pow(n, m - 1);
  if (treeCount > 1e6) {
    throw std::invalid_argument(
        "instance too large for spanning-tree enumeration");
  }
  const int edges = m * n;
  const int need = m + n - 1;
  TreeEvaluator evaluator(problem);
  std::vector<int> chosen;
  chosen.reserve(need);
  double best = std::numeric_limits<double>::infinity();

  // Enumerates every acyclic subset of `need` cells with ascending ids;
  // those are exactly the spanning trees.
  internal::UnionFind components(m + n);
  auto recurse = [&](auto&& self, int firstEdge) -> void {
    if (static_cast<int>(chosen.size()) == need) {
      const std::optional<double> value = evaluator.evaluate(chosen);
      if (value && *value < best) best = *value;
      return;
    }
    const int missing = need - static_cast<int>(chosen.size());
    for (int e = firstEdge; e <= edges - missing; ++e) {
      const int a = e / n;
      const int b = m + e % n;
      if (components.find(a) == components.find(b)) continue;
      const std::vector<int> saved = components.parents();
      components.unite(a, b);
      chosen.push_back(e);
      self(self, e + 1);
      chosen.pop_back();
      components.parents() = saved;
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace transport
