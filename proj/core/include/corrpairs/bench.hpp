// Copyright 2026 The corrpairs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "corrpairs/miners.hpp"
#include "corrpairs/txdb.hpp"

namespace corrpairs {

/// A threshold sweep: every dataset x algorithm x theta cell is mined
/// `repeats` times and the median wall time is reported.
struct BenchPlan {
  /// Basket file paths or T..I..D.. preset names (generated with `seed`).
  std::vector<std::string> datasets;
  std::vector<double> thetas = default_thetas();
  std::vector<Algorithm> algorithms = {Algorithm::kTcp, Algorithm::kTaper};
  unsigned repeats = 3;
  std::uint64_t seed = 1;
  std::size_t brute_max_items = BruteOptions{}.max_items;

  /// 0.9, 0.8, ..., 0.1
  static std::vector<double> default_thetas();
  /// Throws std::invalid_argument unless thetas are strictly descending in
  /// (0, 1] and the other fields are non-empty.
  void validate() const;
};

/// Table 1 shapes with 10x fewer transactions.
std::vector<std::string> desk_presets();

struct BenchRow {
  std::string dataset;
  Algorithm algorithm = Algorithm::kTcp;
  double theta = 0.0;
  double elapsed_ms = 0.0;
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_pruned = 0;
  std::uint64_t pairs_refined = 0;
  std::uint64_t results_count = 0;
  /// "ok", "mismatch" when algorithms disagree on results_count, or
  /// "error: <what>".
  std::string status = "ok";
};

/// Loads a basket file if `dataset` names an existing path, otherwise
/// generates it as a preset with `seed`.
TransactionDatabase resolve_dataset(const std::string& dataset, std::uint64_t seed);

using BenchProgress = std::function<void(const BenchRow&)>;

/// Runs every cell. Failures are recorded in the row's status and the sweep
/// continues. Rows come back sorted by dataset, algorithm, descending theta.
std::vector<BenchRow> run_bench(const BenchPlan& plan, const BenchProgress& progress = {});

/// Header `dataset,algorithm,theta,elapsed_ms,pairs_considered,pairs_pruned,results_count,status`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace corrpairs
