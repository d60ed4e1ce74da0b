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

#include "corrpairs/miners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "corrpairs/corrmath.hpp"
#include "corrpairs/fptree.hpp"

namespace corrpairs {

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kTcp:
      return "tcp";
    case Algorithm::kTaper:
      return "taper";
    case Algorithm::kBrute:
      return "brute";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "tcp") return Algorithm::kTcp;
  if (name == "taper") return Algorithm::kTaper;
  if (name == "brute") return Algorithm::kBrute;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected tcp, taper or brute)");
}

void validate_theta(double theta) {
  // Pairs that never co-occur have phi < 0, so theta <= 0 would need them too.
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta must be in (0, 1], got " + std::to_string(theta));
  }
}

MiningQuery::MiningQuery(double theta, Algorithm algorithm)
    : theta_(theta), algorithm_(algorithm) {
  validate_theta(theta);
}

void sort_canonical(std::vector<PairResult>& results) {
  std::sort(results.begin(), results.end(), [](const PairResult& x, const PairResult& y) {
    if (x.phi != y.phi) return x.phi > y.phi;
    return std::tie(x.item_a, x.item_b) < std::tie(y.item_a, y.item_b);
  });
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kBoundSlack = 1e-12;

void require_transactions(const TransactionDatabase& db) {
  if (db.empty()) throw EmptyDatabaseError("cannot mine an empty transaction database");
}

std::vector<ItemId> constant_items(const SupportTable& s) {
  std::vector<ItemId> out;
  for (ItemId i = 0; i < s.count.size(); ++i) {
    if (s.is_constant(i)) out.push_back(i);
  }
  return out;
}

PairResult make_pair(ItemId x, ItemId y, std::uint64_t count_ab, const SupportTable& s) {
  if (x > y) std::swap(x, y);
  return PairResult{x,          y, s.count[x], s.count[y], count_ab,
                    phi_from_counts(s.count[x], s.count[y], count_ab, s.n_transactions)};
}

std::uint64_t pair_count(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

struct TcpPartial {
  std::vector<PairResult> results;
  std::uint64_t considered = 0;
};

// Correlation mining over header positions [begin, end) with a stride, so
// workers interleave cheap top-ranked items with expensive bottom ones.
TcpPartial tcp_mine_range(const FPTree& tree, const SupportTable& s, double theta,
                          std::size_t first, std::size_t stride) {
  TcpPartial part;
  std::vector<std::uint64_t> co(s.count.size(), 0);
  std::vector<ItemId> touched;
  const auto& header = tree.header();
  for (std::size_t h = first; h < header.size(); h += stride) {
    const ItemId a = header[h].item;
    if (s.is_constant(a)) continue;
    touched.clear();
    accumulate_cooccurrence(tree, a, co, touched);
    for (ItemId b : touched) {
      const std::uint64_t ab = co[b];
      co[b] = 0;
      if (s.is_constant(b)) continue;
      ++part.considered;
      PairResult r = make_pair(a, b, ab, s);
      if (r.phi >= theta) part.results.push_back(r);
    }
  }
  return part;
}

}  // namespace

MiningReport mine_tcp(const TransactionDatabase& db, double theta, const TcpOptions& opts) {
  validate_theta(theta);
  require_transactions(db);
  const auto start = Clock::now();

  MiningReport report;
  report.algorithm = Algorithm::kTcp;
  report.theta = theta;

  const SupportTable supports = count_supports(db);
  const FPTree tree = FPTree::build(db, supports);
  report.constant_items = constant_items(supports);

  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    TcpPartial part = tcp_mine_range(tree, supports, theta, 0, 1);
    report.results = std::move(part.results);
    report.stats.pairs_considered = part.considered;
  } else {
    std::vector<TcpPartial> parts(threads);
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] { parts[w] = tcp_mine_range(tree, supports, theta, w, threads); });
      }
    }
    for (auto& part : parts) {
      report.results.insert(report.results.end(), part.results.begin(), part.results.end());
      report.stats.pairs_considered += part.considered;
    }
  }
  report.stats.pairs_refined = report.stats.pairs_considered;
  sort_canonical(report.results);
  report.elapsed = Clock::now() - start;
  return report;
}

MiningReport mine_taper(const TransactionDatabase& db, double theta, const TaperOptions& opts) {
  validate_theta(theta);
  require_transactions(db);
  const auto start = Clock::now();

  MiningReport report;
  report.algorithm = Algorithm::kTaper;
  report.theta = theta;

  const SupportTable supports = count_supports(db);
  report.constant_items = constant_items(supports);

  // Descending support, so the earlier item of a pair always plays sup(A).
  std::vector<ItemId> sorted;
  for (ItemId i : FPTree::rank_order(supports)) {
    if (!supports.is_constant(i)) sorted.push_back(i);
  }
  const std::uint64_t k = sorted.size();
  report.stats.pairs_considered = pair_count(k);

  // Filtering. For fixed A the bound shrinks with sup(B), so the first
  // failing B ends the row. A pair at the bound (sup_ab = min) can have a
  // computed phi a few ulps above its computed bound, hence the slack.
  const double cutoff = theta - kBoundSlack;
  std::unordered_map<std::uint64_t, std::uint64_t> survivors;
  const auto key = [](ItemId x, ItemId y) {
    if (x > y) std::swap(x, y);
    return (static_cast<std::uint64_t>(x) << 32) | y;
  };
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double sup_a = supports.relative(sorted[i]);
    std::size_t j = i + 1;
    for (; j < sorted.size(); ++j) {
      if (phi_upper_bound(sup_a, supports.relative(sorted[j])) < cutoff) break;
      survivors.emplace(key(sorted[i], sorted[j]), 0);
    }
    report.stats.pairs_pruned_by_bound += sorted.size() - j;
    if (opts.on_prune) {
      for (; j < sorted.size(); ++j) opts.on_prune(sorted[i], sorted[j]);
    }
  }
  report.stats.pairs_refined = survivors.size();

  // Refinement: one scan counting every surviving pair.
  if (!survivors.empty()) {
    for (const auto& t : db.transactions()) {
      for (std::size_t x = 0; x < t.size(); ++x) {
        for (std::size_t y = x + 1; y < t.size(); ++y) {
          if (auto it = survivors.find(key(t[x], t[y])); it != survivors.end()) ++it->second;
        }
      }
    }
  }
  for (const auto& [pair_key, count_ab] : survivors) {
    if (count_ab == 0) continue;
    const auto a = static_cast<ItemId>(pair_key >> 32);
    const auto b = static_cast<ItemId>(pair_key & 0xffffffffu);
    PairResult r = make_pair(a, b, count_ab, supports);
    if (r.phi >= theta) report.results.push_back(r);
  }
  sort_canonical(report.results);
  report.elapsed = Clock::now() - start;
  return report;
}

MiningReport mine_brute(const TransactionDatabase& db, double theta, const BruteOptions& opts) {
  validate_theta(theta);
  require_transactions(db);
  const std::size_t n = db.n_items();
  if (n > opts.max_items) {
    throw OracleUnavailableError("brute-force oracle unavailable: " + std::to_string(n) +
                                 " items exceeds cap of " + std::to_string(opts.max_items));
  }
  const auto start = Clock::now();

  MiningReport report;
  report.algorithm = Algorithm::kBrute;
  report.theta = theta;

  const SupportTable supports = count_supports(db);
  report.constant_items = constant_items(supports);

  // Row x holds pairs (x, y) for y > x at offset row_start(x) + (y - x - 1).
  const auto row_start = [n](std::size_t x) { return x * (2 * n - x - 1) / 2; };
  if (db.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw OracleUnavailableError("brute-force oracle unavailable: too many transactions");
  }
  std::vector<std::uint32_t> matrix(pair_count(n), 0);
  for (const auto& t : db.transactions()) {
    for (std::size_t p = 0; p < t.size(); ++p) {
      const std::size_t row = row_start(t[p]);
      for (std::size_t q = p + 1; q < t.size(); ++q) ++matrix[row + (t[q] - t[p] - 1)];
    }
  }

  for (ItemId x = 0; x < n; ++x) {
    if (supports.is_constant(x)) continue;
    for (ItemId y = x + 1; y < n; ++y) {
      if (supports.is_constant(y)) continue;
      ++report.stats.pairs_considered;
      PairResult r = make_pair(x, y, matrix[row_start(x) + (y - x - 1)], supports);
      if (r.phi >= theta) report.results.push_back(r);
    }
  }
  report.stats.pairs_refined = report.stats.pairs_considered;
  sort_canonical(report.results);
  report.elapsed = Clock::now() - start;
  return report;
}

MiningReport mine(const TransactionDatabase& db, const MiningQuery& query,
                  std::size_t brute_max_items) {
  switch (query.algorithm()) {
    case Algorithm::kTcp:
      return mine_tcp(db, query.theta());
    case Algorithm::kTaper:
      return mine_taper(db, query.theta());
    case Algorithm::kBrute:
      return mine_brute(db, query.theta(), BruteOptions{brute_max_items});
  }
  throw std::logic_error("unhandled algorithm");
}

namespace {

std::string describe(const TransactionDatabase& db, const PairResult& r) {
  char phi[32];
  std::snprintf(phi, sizeof phi, "%.12f", r.phi);
  std::ostringstream out;
  out << '(' << db.item_name(r.item_a) << ',' << db.item_name(r.item_b) << ") counts "
      << r.count_a << '/' << r.count_b << '/' << r.count_ab << " phi " << phi;
  return out.str();
}

}  // namespace

EquivalenceResult compare_results(const TransactionDatabase& db, const MiningReport& expected,
                                  const MiningReport& actual, double phi_tolerance) {
  EquivalenceResult res;
  std::map<std::pair<ItemId, ItemId>, const PairResult*> want;
  for (const auto& r : expected.results) want[{r.item_a, r.item_b}] = &r;
  const std::string who(to_string(actual.algorithm));
  const std::string ref(to_string(expected.algorithm));
  for (const auto& r : actual.results) {
    auto it = want.find({r.item_a, r.item_b});
    if (it == want.end()) {
      res.diff.push_back("+ " + who + " only: " + describe(db, r));
      continue;
    }
    const PairResult& w = *it->second;
    if (w.count_a != r.count_a || w.count_b != r.count_b || w.count_ab != r.count_ab ||
        !(std::abs(w.phi - r.phi) <= phi_tolerance)) {
      res.diff.push_back("~ " + ref + ": " + describe(db, w) + " | " + who + ": " +
                         describe(db, r));
    }
    want.erase(it);
  }
  for (const auto& [k, r] : want) res.diff.push_back("- " + ref + " only: " + describe(db, *r));
  res.equivalent = res.diff.empty();
  return res;
}

MinerSet MinerSet::defaults(std::size_t brute_max_items) {
  return MinerSet{
      [](const TransactionDatabase& db, double theta) { return mine_tcp(db, theta); },
      [](const TransactionDatabase& db, double theta) { return mine_taper(db, theta); },
      [brute_max_items](const TransactionDatabase& db, double theta) {
        return mine_brute(db, theta, BruteOptions{brute_max_items});
      },
  };
}

EquivalenceResult verify_equivalence(const TransactionDatabase& db, double theta,
                                     const MinerSet& miners) {
  const MiningReport reference = miners.brute(db, theta);
  EquivalenceResult out;
  for (const Miner* m : {&miners.tcp, &miners.taper}) {
    EquivalenceResult r = compare_results(db, reference, (*m)(db, theta));
    out.diff.insert(out.diff.end(), r.diff.begin(), r.diff.end());
  }
  out.equivalent = out.diff.empty();
  return out;
}

void write_results_csv(std::ostream& out, const TransactionDatabase& db,
                       const std::vector<PairResult>& results) {
  out << "item_a,item_b,count_a,count_b,count_ab,phi\n";
  char phi[32];
  for (const auto& r : results) {
    std::snprintf(phi, sizeof phi, "%.6f", r.phi);
    out << db.item_name(r.item_a) << ',' << db.item_name(r.item_b) << ',' << r.count_a << ','
        << r.count_b << ',' << r.count_ab << ',' << phi << '\n';
  }
}

std::vector<PairResult> read_results_csv(std::istream& in, const TransactionDatabase& db) {
  std::vector<PairResult> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("item_a,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) f.push_back(cell);
    if (f.size() != 6) {
      throw FormatError("result csv line " + std::to_string(lineno) + ": expected 6 fields");
    }
    const auto a = db.find_item(f[0]);
    const auto b = db.find_item(f[1]);
    if (!a || !b) throw FormatError("result csv line " + std::to_string(lineno) + ": unknown item");
    try {
      PairResult r{*a, *b, std::stoull(f[2]), std::stoull(f[3]), std::stoull(f[4]), std::stod(f[5])};
      if (r.item_a > r.item_b) {
        std::swap(r.item_a, r.item_b);
        std::swap(r.count_a, r.count_b);
      }
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw FormatError("result csv line " + std::to_string(lineno) + ": bad number");
    }
  }
  return out;
}

std::string stats_line(const MiningReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "algo=%s theta=%g considered=%llu pruned=%llu refined=%llu results=%zu "
                "elapsed_ms=%.3f",
                std::string(to_string(report.algorithm)).c_str(), report.theta,
                static_cast<unsigned long long>(report.stats.pairs_considered),
                static_cast<unsigned long long>(report.stats.pairs_pruned_by_bound),
                static_cast<unsigned long long>(report.stats.pairs_refined),
                report.results.size(), report.elapsed_ms());
  return buf;
}

}  // namespace corrpairs
