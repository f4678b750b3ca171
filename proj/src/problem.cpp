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

#include "transport/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

namespace transport {

double balance_tolerance(const Problem& problem) {
  return 1e-9 * std::max(problem.totalSupply(), 1.0);
}

double optimality_tolerance(const Problem& problem) {
  double maxAbs = 0.0;
  if (problem.cost.size() > 0) maxAbs = problem.cost.cwiseAbs().maxCoeff();
  return 1e-9 * std::max(1.0, maxAbs);
}

std::vector<std::string> validate(const Problem& problem) {
  std::vector<std::string> violations;
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  if (m < 1) violations.push_back("m not >= 1");
  if (n < 1) violations.push_back("n not >= 1");
  for (int i = 0; i < m; ++i) {
    if (!(problem.supply[i] > 0.0)) {
      violations.push_back("supply[" + std::to_string(i) + "] not > 0");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!(problem.demand[j] > 0.0)) {
      violations.push_back("demand[" + std::to_string(j) + "] not > 0");
    }
  }
  if (problem.cost.rows() != m || problem.cost.cols() != n) {
    violations.push_back("cost matrix is " + std::to_string(problem.cost.rows()) +
                         "x" + std::to_string(problem.cost.cols()) +
                         ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!std::isfinite(problem.cost(i, j))) {
          violations.push_back("cost[" + std::to_string(i) + "][" +
                               std::to_string(j) + "] not finite");
        }
      }
    }
  }
  const double totalSupply = problem.supply.sum();
  const double totalDemand = problem.demand.sum();
  if (std::abs(totalSupply - totalDemand) >
      1e-9 * std::max(std::max(totalSupply, totalDemand), 1.0)) {
    violations.push_back("unbalanced: " + format_double(totalSupply) +
                         " != " + format_double(totalDemand));
  }
  return violations;
}

TransportPlan::TransportPlan(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      rowIndex_(rows),
      colIndex_(cols),
      present_(static_cast<std::size_t>(rows) * cols, false) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("TransportPlan needs at least one row and column");
  }
}

void TransportPlan::insertHandle(std::vector<int>& list, int handle,
                                 bool orderByCol) {
  auto less = [&](int a, int b) {
    return orderByCol ? entries_[a].col < entries_[b].col
                      : entries_[a].row < entries_[b].row;
  };
  list.insert(std::upper_bound(list.begin(), list.end(), handle, less), handle);
}

void TransportPlan::eraseHandle(std::vector<int>& list, int handle) {
  list.erase(std::find(list.begin(), list.end(), handle));
}

int TransportPlan::add(int i, int j, double flow) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw std::invalid_argument("plan entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") out of range");
  }
  if (contains(i, j)) {
    throw std::invalid_argument("duplicate plan entry (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")");
  }
  const int handle = static_cast<int>(entries_.size());
  entries_.push_back({i, j, flow});
  insertHandle(rowIndex_[i], handle, /*orderByCol=*/true);
  insertHandle(colIndex_[j], handle, /*orderByCol=*/false);
  present_[static_cast<std::size_t>(i) * cols_ + j] = true;
  return handle;
}

void TransportPlan::replaceEntry(int handle, int i, int j, double flow) {
  if (contains(i, j)) {
    throw std::invalid_argument("cell (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") already in plan");
  }
  PlanEntry& e = entries_[handle];
  eraseHandle(rowIndex_[e.row], handle);
  eraseHandle(colIndex_[e.col], handle);
  present_[static_cast<std::size_t>(e.row) * cols_ + e.col] = false;
  e = {i, j, flow};
  insertHandle(rowIndex_[i], handle, /*orderByCol=*/true);
  insertHandle(colIndex_[j], handle, /*orderByCol=*/false);
  present_[static_cast<std::size_t>(i) * cols_ + j] = true;
}

Eigen::VectorXd TransportPlan::rowSums() const {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(rows_);
  for (const PlanEntry& e : entries_) sums[e.row] += e.flow;
  return sums;
}

Eigen::VectorXd TransportPlan::colSums() const {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(cols_);
  for (const PlanEntry& e : entries_) sums[e.col] += e.flow;
  return sums;
}

double objective(const Problem& problem, const TransportPlan& plan) {
  if (plan.rows() != problem.numOrigins() ||
      plan.cols() != problem.numDestinations()) {
    throw std::out_of_range("plan shape does not match problem");
  }
  double total = 0.0;
  for (const PlanEntry& e : plan.entries()) {
    total += problem.cost(e.row, e.col) * e.flow;
  }
  return total;
}

double feasibility_residual(const Problem& problem, const TransportPlan& plan) {
  const Eigen::VectorXd rowDev = plan.rowSums() - problem.supply;
  const Eigen::VectorXd colDev = plan.colSums() - problem.demand;
  return std::max(rowDev.cwiseAbs().maxCoeff(), colDev.cwiseAbs().maxCoeff());
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

// Whitespace tokenizer that tracks the 1-based line of each token.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) : in_(in) {}

  // Returns false at end of input.
  bool next(std::string& token) {
    while (pos_ >= line_.size()) {
      if (!std::getline(in_, line_)) return false;
      ++lineNo_;
      pos_ = 0;
      skipSpace();
    }
    std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    token = line_.substr(start, pos_ - start);
    skipSpace();
    return true;
  }

  int line() const { return lineNo_; }

 private:
  void skipSpace() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  std::istream& in_;
  std::string line_;
  std::size_t pos_ = 0;
  int lineNo_ = 0;
};

double parseNumber(TokenStream& tokens, const char* what) {
  std::string token;
  if (!tokens.next(token)) {
    throw ParseError(tokens.line(), std::string("unexpected end of input, expected ") + what);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(tokens.line(), std::string("expected ") + what + ", got '" + token + "'");
  }
  return value;
}

// Reads exactly `count` numbers of the given kind; reports a count mismatch
// when the input runs out early.
void parseSequence(TokenStream& tokens, const char* what, long long count,
                   const std::function<void(long long, double)>& sink) {
  std::string token;
  for (long long k = 0; k < count; ++k) {
    if (!tokens.next(token)) {
      throw ParseError(tokens.line(), "expected " + std::to_string(count) + " " +
                                          what + " entries, got " + std::to_string(k));
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(tokens.line(),
                       std::string("expected ") + what + ", got '" + token + "'");
    }
    sink(k, value);
  }
}

int parseCount(TokenStream& tokens, const char* what) {
  const double value = parseNumber(tokens, what);
  if (value < 1 || value != std::floor(value) || value > 1e9) {
    throw ParseError(tokens.line(), std::string("invalid ") + what);
  }
  return static_cast<int>(value);
}

}  // namespace

Problem read_problem(std::istream& in) {
  TokenStream tokens(in);
  std::string token;
  if (!tokens.next(token)) throw ParseError(1, "malformed header: empty input");
  int m = 0;
  {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), m);
    if (ec != std::errc() || ptr != token.data() + token.size() || m < 1 ||
        tokens.line() != 1) {
      throw ParseError(tokens.line(), "malformed header, expected 'm n'");
    }
  }
  const int n = parseCount(tokens, "destination count");
  if (tokens.line() != 1) throw ParseError(tokens.line(), "malformed header, expected 'm n'");

  Problem problem;
  problem.supply.resize(m);
  problem.demand.resize(n);
  problem.cost.resize(m, n);
  parseSequence(tokens, "supply", m,
                [&](long long i, double v) { problem.supply[i] = v; });
  parseSequence(tokens, "demand", n,
                [&](long long j, double v) { problem.demand[j] = v; });
  parseSequence(tokens, "cost", static_cast<long long>(m) * n,
                [&](long long k, double v) {
                  problem.cost(static_cast<int>(k / n), static_cast<int>(k % n)) = v;
                });
  if (tokens.next(token)) {
    throw ParseError(tokens.line(), "trailing token '" + token + "'");
  }
  return problem;
}

Problem read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_problem(in);
}

void write_problem(std::ostream& out, const Problem& problem) {
  const int m = problem.numOrigins();
  const int n = problem.numDestinations();
  out << m << ' ' << n << '\n';
  for (int i = 0; i < m; ++i) out << (i ? " " : "") << format_double(problem.supply[i]);
  out << '\n';
  for (int j = 0; j < n; ++j) out << (j ? " " : "") << format_double(problem.demand[j]);
  out << '\n';
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      out << (j ? " " : "") << format_double(problem.cost(i, j));
    }
    out << '\n';
  }
}

void write_problem_file(const std::string& path, const Problem& problem) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_problem(out, problem);
}

TransportPlan read_plan(std::istream& in) {
  TokenStream tokens(in);
  const int m = parseCount(tokens, "row count");
  const int n = parseCount(tokens, "column count");
  const double entryCount = parseNumber(tokens, "entry count");
  if (entryCount < 0 || entryCount != std::floor(entryCount)) {
    throw ParseError(tokens.line(), "invalid entry count");
  }
  TransportPlan plan(m, n);
  for (int k = 0; k < static_cast<int>(entryCount); ++k) {
    const int i = static_cast<int>(parseNumber(tokens, "row index"));
    const int j = static_cast<int>(parseNumber(tokens, "column index"));
    const double flow = parseNumber(tokens, "flow");
    try {
      plan.add(i, j, flow);
    } catch (const std::invalid_argument& err) {
      throw ParseError(tokens.line(), err.what());
    }
  }
  std::string token;
  if (tokens.next(token)) {
    throw ParseError(tokens.line(), "trailing token '" + token + "'");
  }
  return plan;
}

TransportPlan read_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_plan(in);
}

void write_plan(std::ostream& out, const TransportPlan& plan) {
  out << plan.rows() << ' ' << plan.cols() << ' ' << plan.size() << '\n';
  for (const PlanEntry& e : plan.entries()) {
    out << e.row << ' ' << e.col << ' ' << format_double(e.flow) << '\n';
  }
}

void write_plan_file(const std::string& path, const TransportPlan& plan) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_plan(out, plan);
}

}  // namespace transport
