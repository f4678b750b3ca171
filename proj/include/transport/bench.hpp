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

#ifndef TRANSPORT_BENCH_HPP_
#define TRANSPORT_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>

#include "transport/shortlist.hpp"

namespace transport {

/// PRNG identifier written into every CSV header. The generator is
/// mt19937_64 with rejection-sampled bounded draws, so identical seeds give
/// bit-identical instances on any conforming platform.
inline constexpr std::string_view kGeneratorId = "mt19937_64-rej-v1";

/// Random geometric instance family: n origins and n destinations placed on
/// distinct cells of a square grid, integer masses, Euclidean costs.
struct InstanceSpec {
  int n = 0;
  std::uint64_t seed = 0;
  int gridSize = 512;
  int massMin = 1;
  int massMax = 255;
};

struct GeneratedInstance {
  Problem problem;
  // Grid coordinates, one row per point, columns x and y.
  Eigen::Matrix<int, Eigen::Dynamic, 2> originPoints;
  Eigen::Matrix<int, Eigen::Dynamic, 2> destinationPoints;
};

/// Fully seed-determined: placement rejects collisions across the union of
/// all points, masses are uniform integers, and the last demand (or supply)
/// absorbs the balance difference. Total supply equals total demand exactly.
GeneratedInstance generate_instance(const InstanceSpec& spec);

/// Seed for a given (size, repetition) pair, mixed from the base seed so all
/// methods of one repetition see the same instance.
std::uint64_t instance_seed(std::uint64_t baseSeed, int n, int rep);

struct BenchConfig {
  std::vector<int> sizes;
  int reps = 1;
  std::vector<std::string> methods;  // init rule names and/or "shortlist"
  std::vector<PivotStrategy> pivots = {PivotStrategy::ModifiedRowMostNegative};
  std::uint64_t baseSeed = 1;
  int workers = 1;      // records are deterministic regardless; timings are
                        // only meaningful sequentially
  bool warmup = true;   // one discarded run per (method, size); sequential only
  std::optional<ShortlistParams> shortlistParams;  // override for "shortlist"
};

struct BenchRecord {
  std::string method;
  std::string pivot;
  int n = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  double initMs = 0.0;
  double totalMs = 0.0;
  long long pivots = 0;
  long long cellsScanned = 0;
  double objective = 0.0;  // NaN marks a failed (aborted) run
};

/// Times every requested method on every (size, repetition) instance. The
/// instance for a given (size, rep) is shared by all methods, so rows are
/// paired and their objectives must agree. Timing covers initialization and
/// pivoting only, never instance generation or I/O.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

// CSV layout: a '#' comment line carrying the generator id and base seed,
// then the mandatory header
//   method,pivot,n,rep,seed,init_ms,total_ms,pivots,cells_scanned,objective
// with floats at 6 significant digits.
void write_csv(std::ostream& out, std::span<const BenchRecord> records,
               std::uint64_t baseSeed);
std::vector<BenchRecord> read_csv(std::istream& in);

struct FitResult {
  double factor = 0.0;    // c in r = c * n^q
  double exponent = 0.0;  // q
  double logResidual = 0.0;  // residual sum of squares in log-log space
};

/// Least-squares line through (log n, log r) for per-size mean runtimes.
/// Needs at least two distinct sizes and positive runtimes.
FitResult fit_power_law(std::span<const std::pair<double, double>> meansBySize);

/// Per-size mean of total runtime for one method/pivot label, in the same
/// unit as the records; sizes ascending.
std::vector<std::pair<double, double>> mean_runtime_by_size(
    std::span<const BenchRecord> records, std::string_view method,
    std::string_view pivot);

}  // namespace transport

#endif  // TRANSPORT_BENCH_HPP_
