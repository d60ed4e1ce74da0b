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

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "corrpairs/corrmath.hpp"
#include "corrpairs/miners.hpp"
#include "support/oracle.hpp"

namespace corrpairs {
namespace {

using testing::fig1_db;

std::set<std::pair<std::string, std::string>> names_of(const TransactionDatabase& db,
                                                       const MiningReport& r) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& p : r.results) {
    auto x = db.item_name(p.item_a), y = db.item_name(p.item_b);
    if (y < x) std::swap(x, y);
    out.emplace(x, y);
  }
  return out;
}

const std::set<std::pair<std::string, std::string>> kFig1At06 = {
    {"a", "f"}, {"f", "m"}, {"a", "c"}, {"c", "m"}, {"c", "p"}, {"a", "m"}};

TEST(MiningQuery, ThetaRange) {
  EXPECT_NO_THROW(MiningQuery(1.0));
  EXPECT_NO_THROW(MiningQuery(1e-9));
  EXPECT_THROW(MiningQuery(0.0), std::invalid_argument);
  EXPECT_THROW(MiningQuery(-0.5), std::invalid_argument);
  EXPECT_THROW(MiningQuery(1.5), std::invalid_argument);
  EXPECT_THROW(MiningQuery(std::nan("")), std::invalid_argument);
}

TEST(Algorithm, Parse) {
  EXPECT_EQ(parse_algorithm("taper"), Algorithm::kTaper);
  EXPECT_EQ(to_string(Algorithm::kBrute), "brute");
  EXPECT_THROW(parse_algorithm("apriori"), std::invalid_argument);
}

TEST(MineTcp, Fig1Theta06) {
  const auto db = fig1_db();
  const auto r = mine_tcp(db, 0.6);
  EXPECT_EQ(names_of(db, r), kFig1At06);
  ASSERT_EQ(r.results.size(), 6u);
  EXPECT_EQ(db.item_name(r.results[0].item_a), "a");
  EXPECT_EQ(db.item_name(r.results[0].item_b), "m");
  EXPECT_NEAR(r.results[0].phi, 1.0, 1e-12);
  for (std::size_t k = 1; k < 6; ++k) EXPECT_NEAR(r.results[k].phi, 0.6123724356957946, 1e-12);
  EXPECT_TRUE(r.constant_items.empty());
}

TEST(MineTcp, Fig1Theta1) {
  const auto db = fig1_db();
  const auto r = mine_tcp(db, 1.0);
  EXPECT_EQ(names_of(db, r), (std::set<std::pair<std::string, std::string>>{{"a", "m"}}));
}

TEST(MineTcp, AboveMaxPhiIsEmpty) {
  const auto db = testing::random_db(3, 15, 100, 0.3);
  double max_phi = -2;
  for (const auto& p : testing::all_pairs(db)) max_phi = std::max(max_phi, p.phi);
  ASSERT_LT(max_phi, 1.0);
  EXPECT_TRUE(mine_tcp(db, std::nextafter(max_phi, 2.0) + 1e-9).results.empty());
}

TEST(MineTcp, ConsidersExactlyCooccurringPairs) {
  const auto db = fig1_db();
  // All 15 pairs of the example co-occur at least once.
  EXPECT_EQ(mine_tcp(db, 0.5).stats.pairs_considered, 15u);
}

TEST(MineTcp, ParallelMatchesSerial) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto db = testing::random_db(seed, 40, 300, 0.15);
    const auto serial = mine_tcp(db, 0.2);
    const auto parallel = mine_tcp(db, 0.2, TcpOptions{4});
    EXPECT_EQ(serial.results, parallel.results);
    EXPECT_EQ(serial.stats.pairs_considered, parallel.stats.pairs_considered);
  }
}

TEST(MineTaper, Fig1Theta07) {
  const auto db = fig1_db();
  const auto r = mine_taper(db, 0.7);
  EXPECT_EQ(r.stats.pairs_considered, 15u);
  EXPECT_EQ(r.stats.pairs_pruned_by_bound, 8u);
  EXPECT_EQ(r.stats.pairs_refined, 7u);
  EXPECT_EQ(names_of(db, r), (std::set<std::pair<std::string, std::string>>{{"a", "m"}}));
}

TEST(MineTaper, Fig1Theta06) {
  const auto db = fig1_db();
  const auto r = mine_taper(db, 0.6);
  EXPECT_EQ(r.stats.pairs_pruned_by_bound, 0u);
  EXPECT_EQ(r.stats.pairs_refined, 15u);
  EXPECT_EQ(r.results, mine_tcp(db, 0.6).results);
}

TEST(MineTaper, DistinctSupportsAtThetaOnePruneEverything) {
  TransactionDatabase db;
  // supports 1/6 .. 5/6
  const std::vector<std::vector<std::string>> rows = {
      {"a", "b", "c", "d", "e"}, {"b", "c", "d", "e"}, {"c", "d", "e"}, {"d", "e"}, {"e"}, {}};
  for (const auto& r : rows) db.add_transaction_tokens(r);
  const auto r = mine_taper(db, 1.0);
  EXPECT_TRUE(r.results.empty());
  EXPECT_EQ(r.stats.pairs_refined, 0u);
  EXPECT_EQ(r.stats.pairs_pruned_by_bound, r.stats.pairs_considered);
  EXPECT_EQ(r.stats.pairs_considered, 10u);
}

TEST(MineTaper, PrunedPairsNeverQualify) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto db = testing::random_db(seed, 25, 200, 0.2);
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      std::uint64_t seen = 0;
      TaperOptions opts;
      opts.on_prune = [&](ItemId a, ItemId b) {
        ++seen;
        const auto ca = testing::count_item(db, a), cb = testing::count_item(db, b);
        const auto ab = testing::count_pair(db, a, b);
        const double p = testing::contingency_phi(ab, ca - ab, cb - ab, db.size() - ca - cb + ab);
        EXPECT_LT(p, theta) << "seed " << seed;
      };
      const auto r = mine_taper(db, theta, opts);
      EXPECT_EQ(seen, r.stats.pairs_pruned_by_bound);
      EXPECT_EQ(r.stats.pairs_pruned_by_bound + r.stats.pairs_refined, r.stats.pairs_considered);
    }
  }
}

TEST(MineTaper, PairSaturatingTheBoundAtThetaSurvives) {
  // x in 2 rows, y in 15 of 42, always together: phi equals the bound, 0.3.
  TransactionDatabase db;
  for (int k = 0; k < 42; ++k) {
    std::vector<std::string> t;
    if (k < 2) t.push_back("x");
    if (k < 15) t.push_back("y");
    t.push_back(k % 2 ? "u" : "v");
    db.add_transaction_tokens(t);
  }
  const auto brute = mine_brute(db, 0.3);
  ASSERT_EQ(brute.results.size(), 1u);
  EXPECT_EQ(mine_taper(db, 0.3).results, brute.results);
}

TEST(MineBrute, Fig1MatchesTcp) {
  const auto db = fig1_db();
  EXPECT_EQ(mine_brute(db, 0.6).results, mine_tcp(db, 0.6).results);
}

TEST(MineBrute, AllConstantItemsGiveNothing) {
  TransactionDatabase db;
  const std::vector<std::string> xy = {"x", "y"};
  db.add_transaction_tokens(xy);
  for (double theta : {0.1, 0.5, 1.0}) {
    const auto r = mine_brute(db, theta);
    EXPECT_TRUE(r.results.empty());
    EXPECT_EQ(r.stats.pairs_considered, 0u);
    EXPECT_EQ(r.constant_items.size(), 2u);
    EXPECT_TRUE(mine_tcp(db, theta).results.empty());
    EXPECT_TRUE(mine_taper(db, theta).results.empty());
  }
}

TEST(MineBrute, IndependentPairsGiveNothing) {
  // x and y each in half the rows, together in a quarter: phi = 0.
  TransactionDatabase db;
  const std::vector<std::vector<std::string>> rows = {{"x", "y"}, {"x"}, {"y"}, {"z"}};
  for (const auto& r : rows) db.add_transaction_tokens(r);
  // z: 1/4 with x 0, y 0 -> negative phi.
  for (double theta : {1e-6, 0.5}) EXPECT_TRUE(mine_brute(db, theta).results.empty());
}

TEST(MineBrute, ItemCap) {
  const auto db = testing::random_db(1, 30, 10, 0.3);
  EXPECT_THROW(mine_brute(db, 0.5, BruteOptions{10}), OracleUnavailableError);
}

TEST(Miners, EmptyDatabaseRejected) {
  TransactionDatabase db;
  EXPECT_THROW(mine_tcp(db, 0.5), EmptyDatabaseError);
  EXPECT_THROW(mine_taper(db, 0.5), EmptyDatabaseError);
  EXPECT_THROW(mine_brute(db, 0.5), EmptyDatabaseError);
}

TEST(Miners, BadThetaRejected) {
  const auto db = fig1_db();
  EXPECT_THROW(mine_tcp(db, 0.0), std::invalid_argument);
  EXPECT_THROW(mine_taper(db, 1.01), std::invalid_argument);
  EXPECT_THROW(mine_brute(db, -1.0), std::invalid_argument);
}

TEST(Miners, BruteAgreesWithContingencyOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto db = testing::random_db(seed, 20, 150, 0.25);
    const auto r = mine_brute(db, 0.05);
    std::size_t expected = 0;
    for (const auto& p : testing::all_pairs(db)) {
      if (p.phi >= 0.05 + 1e-9) {
        ++expected;
        const auto it = std::find_if(r.results.begin(), r.results.end(), [&](const PairResult& x) {
          return x.item_a == p.a && x.item_b == p.b;
        });
        ASSERT_NE(it, r.results.end());
        EXPECT_EQ(it->count_ab, p.count_ab);
        EXPECT_NEAR(it->phi, p.phi, 1e-9);
      }
    }
    EXPECT_GE(r.results.size(), expected);
  }
}

TEST(Miners, MonotoneInTheta) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto db = testing::random_db(seed, 30, 250, 0.2);
    std::uint64_t prev_pruned = ~std::uint64_t{0};
    std::vector<PairResult> prev;
    const auto tcp_considered = mine_tcp(db, 0.9).stats.pairs_considered;
    for (int k = 9; k >= 1; --k) {
      const double theta = k / 10.0;
      const auto taper = mine_taper(db, theta);
      EXPECT_LE(taper.stats.pairs_pruned_by_bound, prev_pruned);
      prev_pruned = taper.stats.pairs_pruned_by_bound;
      const auto tcp = mine_tcp(db, theta);
      EXPECT_EQ(tcp.stats.pairs_considered, tcp_considered);
      for (const auto& p : prev) {
        EXPECT_NE(std::find(tcp.results.begin(), tcp.results.end(), p), tcp.results.end());
      }
      prev = tcp.results;
    }
  }
}

TEST(VerifyEquivalence, Fig1AllThetas) {
  const auto db = fig1_db();
  for (int k = 1; k <= 9; ++k) {
    const auto r = verify_equivalence(db, k / 10.0);
    EXPECT_TRUE(r.equivalent) << k;
    EXPECT_TRUE(r.diff.empty());
  }
}

TEST(VerifyEquivalence, SeededRandomDatabases) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto db = testing::random_db(seed, 3 + seed % 40, 10 + (seed * 7) % 300,
                                       0.02 + 0.005 * (seed % 60));
    if (db.empty()) continue;
    const double theta = 0.05 + 0.9 * static_cast<double>(seed % 19) / 18.0;
    const auto r = verify_equivalence(db, theta);
    ASSERT_TRUE(r.equivalent) << "seed " << seed << ": " << (r.diff.empty() ? "" : r.diff[0]);
  }
}

TEST(VerifyEquivalence, DetectsCorruptedTaper) {
  const auto db = fig1_db();
  MinerSet miners = MinerSet::defaults();
  // Misordered bound roles: sqrt(sup_a/sup_b) with the larger support on
  // top, squared, so valid pairs are pruned.
  miners.taper = [](const TransactionDatabase& d, double theta) {
    MiningReport r = mine_brute(d, theta);
    r.algorithm = Algorithm::kTaper;
    const auto s = count_supports(d);
    std::erase_if(r.results, [&](const PairResult& p) {
      const double bound = phi_upper_bound(s.relative(p.item_a), s.relative(p.item_b));
      return bound * bound < theta;
    });
    return r;
  };
  const auto r = verify_equivalence(db, 0.6, miners);
  EXPECT_FALSE(r.equivalent);
  ASSERT_FALSE(r.diff.empty());
  EXPECT_NE(r.diff[0].find("brute only"), std::string::npos);
}

TEST(ResultsCsv, FormatAndParse) {
  const auto db = load_basket_file(CORRPAIRS_TEST_DATA "/fig1.basket");
  const auto r = mine_tcp(db, 0.6);
  std::ostringstream out;
  write_results_csv(out, db, r.results);
  const std::string csv = out.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "item_a,item_b,count_a,count_b,count_ab,phi");
  EXPECT_NE(csv.find("\na,m,3,3,3,1.000000\n"), std::string::npos);
  EXPECT_NE(csv.find("f,a,4,3,3,0.612372"), std::string::npos);

  std::istringstream in(csv);
  const auto back = read_results_csv(in, db);
  ASSERT_EQ(back.size(), r.results.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].item_a, r.results[k].item_a);
    EXPECT_EQ(back[k].count_ab, r.results[k].count_ab);
    EXPECT_NEAR(back[k].phi, r.results[k].phi, 5e-7);
  }
}

TEST(ResultsCsv, RejectsUnknownItems) {
  const auto db = fig1_db();
  std::istringstream in("item_a,item_b,count_a,count_b,count_ab,phi\nq,z,1,1,1,0.5\n");
  EXPECT_THROW(read_results_csv(in, db), FormatError);
}

TEST(StatsLine, Fields) {
  const auto db = fig1_db();
  const auto line = stats_line(mine_taper(db, 0.7));
  EXPECT_EQ(line.rfind("algo=taper theta=0.7 considered=15 pruned=8 refined=7 results=1 elapsed_ms=", 0),
            0u)
      << line;
}

}  // namespace
}  // namespace corrpairs
