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

#ifndef TRANSPORT_PROBLEM_HPP_
#define TRANSPORT_PROBLEM_HPP_

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace transport {

// Costs are stored dense and row-major: the solvers scan rows far more often
// than columns. Memory bound is m*n*8 bytes (a 12800 x 12800 instance needs
// ~1.3 GB).
using CostMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A balanced transportation instance: m origins with positive supplies,
/// n destinations with positive demands, and an m x n matrix of finite
/// per-unit shipping costs (any sign).
struct Problem {
  Eigen::VectorXd supply;
  Eigen::VectorXd demand;
  CostMatrix cost;

  int numOrigins() const { return static_cast<int>(supply.size()); }
  int numDestinations() const { return static_cast<int>(demand.size()); }
  double totalSupply() const { return supply.sum(); }
};

/// Checks every Problem invariant and returns one message per violation;
/// an empty list means the instance is valid. Violations are data, not
/// failures, so nothing throws here.
std::vector<std::string> validate(const Problem& problem);

/// Tolerance for supply/demand balance and feasibility residuals:
/// 1e-9 * max(total supply, 1).
double balance_tolerance(const Problem& problem);

/// Tolerance below which a relative cost counts as negative:
/// 1e-9 * max(1, max |c_ij|).
double optimality_tolerance(const Problem& problem);

/// A matrix cell, by origin and destination index (0-based).
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct PlanEntry {
  int row = 0;
  int col = 0;
  double flow = 0.0;
};

/// A transportation plan stored as a sparse set of (row, col, flow) entries
/// with per-row and per-column handle lists. When the entry set has exactly
/// m+n-1 acyclic entries it doubles as a simplex basis (a spanning tree of
/// the bipartite origin/destination graph); the row/column lists are then the
/// only adjacency structure the pivoting machinery needs.
///
/// Handles stay valid across pivots: replaceEntry() reuses the slot of the
/// leaving entry for the entering one.
class TransportPlan {
 public:
  TransportPlan(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return static_cast<int>(entries_.size()); }

  const PlanEntry& entry(int handle) const { return entries_[handle]; }
  std::span<const PlanEntry> entries() const { return entries_; }

  /// Handles of the entries in row i, sorted by ascending column.
  std::span<const int> rowEntries(int i) const { return rowIndex_[i]; }
  /// Handles of the entries in column j, sorted by ascending row.
  std::span<const int> colEntries(int j) const { return colIndex_[j]; }

  bool contains(int i, int j) const {
    return present_[static_cast<std::size_t>(i) * cols_ + j];
  }

  /// Adds a new entry and returns its handle. Throws std::invalid_argument
  /// on duplicate cells or out-of-range indices.
  int add(int i, int j, double flow);

  void setFlow(int handle, double flow) { entries_[handle].flow = flow; }
  void addFlow(int handle, double delta) { entries_[handle].flow += delta; }

  /// Moves the entry in `handle` to a different cell, reusing the slot.
  /// Used by pivots: the leaving entry's slot receives the entering cell.
  void replaceEntry(int handle, int i, int j, double flow);

  Eigen::VectorXd rowSums() const;
  Eigen::VectorXd colSums() const;

 private:
  void insertHandle(std::vector<int>& list, int handle, bool orderByCol);
  void eraseHandle(std::vector<int>& list, int handle);

  int rows_;
  int cols_;
  std::vector<PlanEntry> entries_;
  std::vector<std::vector<int>> rowIndex_;
  std::vector<std::vector<int>> colIndex_;
  std::vector<bool> present_;
};

/// Total shipping cost of the plan: sum of c_ij * x_ij over plan entries.
/// Throws std::out_of_range if the plan's shape does not match the problem.
double objective(const Problem& problem, const TransportPlan& plan);

/// Largest row/column sum deviation of the plan from the problem's
/// supplies and demands.
double feasibility_residual(const Problem& problem, const TransportPlan& plan);

/// Parse failure with the 1-based line number where the offense was found.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Plain-text instance format (whitespace/newline separated ASCII):
//   line 1: "m n"
//   line 2: m supplies
//   line 3: n demands
//   then m lines of n costs each.
// The writer emits shortest round-trip decimals, so read(write(p)) == p
// bit-identically.
Problem read_problem(std::istream& in);
Problem read_problem_file(const std::string& path);
void write_problem(std::ostream& out, const Problem& problem);
void write_problem_file(const std::string& path, const Problem& problem);

// Plan files: line 1 is "m n k", then k lines of "i j flow" (0-based).
TransportPlan read_plan(std::istream& in);
TransportPlan read_plan_file(const std::string& path);
void write_plan(std::ostream& out, const TransportPlan& plan);
void write_plan_file(const std::string& path, const TransportPlan& plan);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

}  // namespace transport

#endif  // TRANSPORT_PROBLEM_HPP_
