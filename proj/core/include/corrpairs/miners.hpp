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

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corrpairs/txdb.hpp"

namespace corrpairs {

enum class Algorithm { kTcp, kTaper, kBrute };

std::string_view to_string(Algorithm algo);
/// Accepts "tcp", "taper", "brute". Throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);

/// Thrown by every miner on a database without transactions.
class EmptyDatabaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the brute-force miner when the dense pair matrix would exceed
/// its item cap.
class OracleUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A threshold in (0, 1] plus the algorithm to run. Construction validates.
class MiningQuery {
 public:
  explicit MiningQuery(double theta, Algorithm algorithm = Algorithm::kTcp);
  double theta() const { return theta_; }
  Algorithm algorithm() const { return algorithm_; }

 private:
  double theta_;
  Algorithm algorithm_;
};

/// Throws std::invalid_argument unless theta is in (0, 1].
void validate_theta(double theta);

struct PairResult {
  ItemId item_a = 0;  // item_a < item_b
  ItemId item_b = 0;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
  std::uint64_t count_ab = 0;
  double phi = 0.0;

  friend bool operator==(const PairResult&, const PairResult&) = default;
};

struct MiningStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_pruned_by_bound = 0;
  std::uint64_t pairs_refined = 0;
};

struct MiningReport {
  Algorithm algorithm = Algorithm::kTcp;
  double theta = 0.0;
  std::vector<PairResult> results;  // canonical order
  MiningStats stats;
  /// Items with support 0 or 1, left out of pair enumeration.
  std::vector<ItemId> constant_items;
  std::chrono::nanoseconds elapsed{0};

  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

/// Descending phi, then ascending (item_a, item_b).
void sort_canonical(std::vector<PairResult>& results);

struct TcpOptions {
  /// Header items are split across this many workers; 1 runs inline.
  unsigned threads = 1;
};

struct TaperOptions {
  /// Called for every pair dropped by the upper-bound filter.
  std::function<void(ItemId, ItemId)> on_prune;
};

struct BruteOptions {
  std::size_t max_items = 20000;
};

/// Pattern-growth miner: a full FP-tree over all items, then for every header
/// item the co-occurrence totals of its conditional pattern base. Exact phi
/// is computed for every co-occurring pair; theta only filters the output.
MiningReport mine_tcp(const TransactionDatabase& db, double theta, const TcpOptions& opts = {});

/// Filter-and-refine miner: drop pairs whose support-only upper bound is below
/// theta, count the survivors in one scan, keep those with phi >= theta.
MiningReport mine_taper(const TransactionDatabase& db, double theta,
                        const TaperOptions& opts = {});

/// Reference miner over a dense upper-triangular co-occurrence matrix.
MiningReport mine_brute(const TransactionDatabase& db, double theta,
                        const BruteOptions& opts = {});

MiningReport mine(const TransactionDatabase& db, const MiningQuery& query,
                  std::size_t brute_max_items = BruteOptions{}.max_items);

struct EquivalenceResult {
  bool equivalent = true;
  /// Human-readable lines describing pairs that differ between reports.
  std::vector<std::string> diff;
};

/// Compares two canonical result lists: same pairs, same counts, phi within
/// `phi_tolerance`. Item names come from `db`.
EquivalenceResult compare_results(const TransactionDatabase& db, const MiningReport& expected,
                                  const MiningReport& actual, double phi_tolerance = 1e-9);

using Miner = std::function<MiningReport(const TransactionDatabase&, double)>;

/// The miners verify_equivalence runs; brute is the reference.
struct MinerSet {
  Miner tcp;
  Miner taper;
  Miner brute;
  static MinerSet defaults(std::size_t brute_max_items = BruteOptions{}.max_items);
};

/// Runs all three miners and checks tcp and taper against brute.
EquivalenceResult verify_equivalence(const TransactionDatabase& db, double theta,
                                     const MinerSet& miners = MinerSet::defaults());

/// CSV with header `item_a,item_b,count_a,count_b,count_ab,phi`; phi with six
/// decimals.
void write_results_csv(std::ostream& out, const TransactionDatabase& db,
                       const std::vector<PairResult>& results);

/// Parses a CSV written by write_results_csv, resolving names against `db`.
/// Throws FormatError on malformed rows or unknown items.
std::vector<PairResult> read_results_csv(std::istream& in, const TransactionDatabase& db);

/// `algo=... theta=... considered=... pruned=... refined=... results=... elapsed_ms=...`
std::string stats_line(const MiningReport& report);

}  // namespace corrpairs
