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

#include <random>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"

using namespace transport;
using testutil::make_problem;

TEST_CASE("validate accepts a minimal balanced instance") {
  const Problem p = make_problem({5}, {5}, {{7}});
  CHECK(validate(p).empty());
}

TEST_CASE("validate reports imbalance") {
  const Problem p = make_problem({5}, {4}, {{7}});
  const auto violations = validate(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == "unbalanced: 5 != 4");
}

TEST_CASE("validate reports nonpositive supplies") {
  const Problem p = make_problem({0, 5}, {5}, {{1}, {2}});
  const auto violations = validate(p);
  REQUIRE(!violations.empty());
  CHECK(violations[0] == "supply[0] not > 0");
}

TEST_CASE("validate reports non-finite costs") {
  Problem p = make_problem({2, 3}, {5}, {{1}, {2}});
  p.cost(1, 0) = std::numeric_limits<double>::quiet_NaN();
  const auto violations = validate(p);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0] == "cost[1][0] not finite");
}

TEST_CASE("read_problem parses the minimal file") {
  std::istringstream in("1 1\n5\n5\n7\n");
  const Problem p = read_problem(in);
  CHECK(p.numOrigins() == 1);
  CHECK(p.numDestinations() == 1);
  CHECK(p.supply[0] == 5);
  CHECK(p.demand[0] == 5);
  CHECK(p.cost(0, 0) == 7);
}

TEST_CASE("read_problem lays costs out row-major") {
  std::istringstream in("2 2\n3 2\n2 3\n1 2\n4 3\n");
  const Problem p = read_problem(in);
  CHECK(p.cost(0, 0) == 1);
  CHECK(p.cost(0, 1) == 2);
  CHECK(p.cost(1, 0) == 4);
  CHECK(p.cost(1, 1) == 3);
}

TEST_CASE("read_problem reports truncated cost sections") {
  std::istringstream in("2 2\n3 2\n2 3\n1 2\n");
  CHECK_THROWS_WITH_AS(read_problem(in),
                       "line 4: expected 4 cost entries, got 2", ParseError);
}

TEST_CASE("read_problem reports non-numeric tokens with their line") {
  std::istringstream in("1 2\n3\n2 x\n1 2\n");
  try {
    read_problem(in);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
    CHECK(std::string(err.what()).find("'x'") != std::string::npos);
  }
}

TEST_CASE("read_problem rejects malformed headers") {
  std::istringstream in("2\n2\n3 2\n2 3\n1 2\n4 3\n");
  CHECK_THROWS_AS(read_problem(in), ParseError);
}

TEST_CASE("read_problem rejects trailing garbage") {
  std::istringstream in("1 1\n5\n5\n7\n9\n");
  CHECK_THROWS_AS(read_problem(in), ParseError);
}

TEST_CASE("problem files round-trip bit-identically") {
  std::mt19937_64 rng(20260809);
  for (int round = 0; round < 50; ++round) {
    const int m = 1 + static_cast<int>(rng() % 6);
    const int n = 1 + static_cast<int>(rng() % 6);
    Problem p = testutil::random_integer_problem(rng, m, n);
    // Exercise non-integer data too.
    p.cost(0, 0) = 0.1 + static_cast<double>(rng() % 1000) / 7.0;
    std::stringstream buffer;
    write_problem(buffer, p);
    const Problem back = read_problem(buffer);
    CHECK(back.supply == p.supply);
    CHECK(back.demand == p.demand);
    CHECK(back.cost == p.cost);
  }
}

TEST_CASE("objective sums cost times flow") {
  const Problem p = make_problem({5}, {5}, {{7}});
  TransportPlan plan(1, 1);
  plan.add(0, 0, 5);
  CHECK(objective(p, plan) == 35);

  const Problem q = make_problem({3, 2}, {2, 3}, {{1, 2}, {4, 3}});
  TransportPlan plan2(2, 2);
  plan2.add(0, 0, 2);
  plan2.add(0, 1, 1);
  plan2.add(1, 1, 2);
  CHECK(objective(q, plan2) == 10);  // 2*1 + 1*2 + 2*3
}

TEST_CASE("objective of a zero cost matrix is zero") {
  const Problem p = make_problem({1, 1}, {2}, {{0}, {0}});
  TransportPlan plan(2, 1);
  plan.add(0, 0, 1);
  plan.add(1, 0, 1);
  CHECK(objective(p, plan) == 0);
}

TEST_CASE("objective rejects mismatched shapes") {
  const Problem p = make_problem({5}, {5}, {{7}});
  TransportPlan plan(2, 1);
  CHECK_THROWS_AS(objective(p, plan), std::out_of_range);
}

TEST_CASE("TransportPlan keeps row and column indexes sorted") {
  TransportPlan plan(3, 4);
  plan.add(1, 3, 1);
  plan.add(1, 0, 2);
  plan.add(1, 2, 3);
  plan.add(0, 2, 4);
  const auto row1 = plan.rowEntries(1);
  REQUIRE(row1.size() == 3);
  CHECK(plan.entry(row1[0]).col == 0);
  CHECK(plan.entry(row1[1]).col == 2);
  CHECK(plan.entry(row1[2]).col == 3);
  const auto col2 = plan.colEntries(2);
  REQUIRE(col2.size() == 2);
  CHECK(plan.entry(col2[0]).row == 0);
  CHECK(plan.entry(col2[1]).row == 1);
  CHECK(plan.contains(1, 2));
  CHECK(!plan.contains(2, 2));
  CHECK_THROWS_AS(plan.add(1, 0, 1), std::invalid_argument);
}

TEST_CASE("replaceEntry moves a slot to a new cell") {
  TransportPlan plan(2, 2);
  const int h = plan.add(0, 0, 5);
  plan.add(1, 1, 3);
  plan.replaceEntry(h, 0, 1, 2);
  CHECK(!plan.contains(0, 0));
  CHECK(plan.contains(0, 1));
  CHECK(plan.entry(h).flow == 2);
  CHECK(plan.rowSums()[0] == 2);
  CHECK(plan.colSums()[1] == 5);
}

TEST_CASE("plan files round-trip") {
  TransportPlan plan(2, 3);
  plan.add(0, 2, 1.5);
  plan.add(1, 0, 2);
  std::stringstream buffer;
  write_plan(buffer, plan);
  const TransportPlan back = read_plan(buffer);
  CHECK(testutil::same_entries(plan, back));
}
