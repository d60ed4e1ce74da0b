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

#include <algorithm>
#include <sstream>

#include "corrpairs/datagen.hpp"

namespace corrpairs {
namespace {

std::string serialize(const TransactionDatabase& db) {
  std::ostringstream out;
  write_baskets(out, db);
  return out.str();
}

TEST(Preset, TableShapes) {
  const auto p = preset("T10I400D100K");
  EXPECT_EQ(p.avg_size, 10.0);
  EXPECT_EQ(p.n_items, 400u);
  EXPECT_EQ(p.n_transactions, 100000u);
  EXPECT_EQ(p.n_patterns, GenParams{}.n_patterns);

  const auto q = preset("T10I800D100K");
  EXPECT_EQ(q.n_items, 800u);
  EXPECT_EQ(q.n_transactions, 100000u);

  const auto r = preset("T5I10D7");
  EXPECT_EQ(r.avg_size, 5.0);
  EXPECT_EQ(r.n_items, 10u);
  EXPECT_EQ(r.n_transactions, 7u);

  EXPECT_EQ(preset("T10I400D1M").n_transactions, 1000000u);
}

TEST(Preset, NameRoundTrip) {
  for (const char* name : {"T10I400D100K", "T5I10D7", "T10I1000D10K", "T3I9D2M"}) {
    EXPECT_EQ(preset_name(preset(name)), name);
  }
}

TEST(Preset, Rejects) {
  for (const char* bad : {"bogus", "", "T10", "T10I400", "T10I400D", "T10I400D10X", "t10i4d1",
                          "T0I10D5", "TxI10D5"}) {
    EXPECT_THROW(preset(bad), std::invalid_argument) << bad;
  }
}

TEST(GenParams, Validation) {
  GenParams p = preset("T10I400D10");
  EXPECT_NO_THROW(p.validate());
  auto q = p;
  q.n_items = 5;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q = p;
  q.corruption = 1.5;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q = p;
  q.avg_size = 0.5;
  EXPECT_THROW(q.validate(), std::invalid_argument);
  q = p;
  q.n_patterns = 0;
  EXPECT_THROW(generate(q), std::invalid_argument);
}

TEST(Generate, ZeroTransactions) {
  auto p = preset("T10I400D0");
  const auto db = generate(p);
  EXPECT_TRUE(db.empty());
}

TEST(Generate, DeterministicPerSeed) {
  auto p = preset("T10I400D2K");
  p.seed = 11;
  const auto a = serialize(generate(p));
  EXPECT_EQ(a, serialize(generate(p)));
  p.seed = 12;
  EXPECT_NE(a, serialize(generate(p)));
}

TEST(Generate, FrozenPrefix) {
  // Pins the random stream; any change here changes every dataset.
  auto p = preset("T4I20D3");
  p.seed = 42;
  p.n_patterns = 5;
  EXPECT_EQ(serialize(generate(p)), "1 2 12 15 18\n0 10 12 15\n2 10 12 15\n");
}

TEST(Generate, ItemsInRangeAndSizesNonEmpty) {
  auto p = preset("T10I50D3K");
  p.seed = 5;
  const auto db = generate(p);
  ASSERT_EQ(db.size(), 3000u);
  EXPECT_EQ(db.n_items(), 50u);
  for (const auto& t : db.transactions()) {
    EXPECT_FALSE(t.empty());
    EXPECT_LT(t.back(), 50u);
  }
}

TEST(Generate, SmallUniverseStillFillsTarget) {
  GenParams p;
  p.n_transactions = 500;
  p.n_items = 3;
  p.avg_size = 3;
  p.seed = 1;
  const auto db = generate(p);
  for (const auto& t : db.transactions()) EXPECT_LE(t.size(), 3u);
}

// Mean size within 5% and item supports skewed (max >= 3x median over the
// items that occur) on every Table 1 shape.
TEST(Generate, TableShapeStatistics) {
  for (const char* name : {"T10I400D100K", "T10I600D100K", "T10I800D100K", "T10I1000D100K"}) {
    auto p = preset(name);
    p.seed = 1;
    const auto db = generate(p);
    ASSERT_EQ(db.size(), 100000u);
    const double mean = static_cast<double>(db.total_items()) / static_cast<double>(db.size());
    EXPECT_NEAR(mean, p.avg_size, 0.05 * p.avg_size) << name;

    std::vector<std::uint64_t> present;
    for (auto c : count_supports(db).count) {
      if (c) present.push_back(c);
    }
    std::sort(present.begin(), present.end());
    EXPECT_GE(present.back(), 3 * present[present.size() / 2]) << name;
  }
}

TEST(Meta, ListsParams) {
  auto p = preset("T10I400D100K");
  p.seed = 9;
  std::ostringstream out;
  write_meta(out, p);
  const auto meta = out.str();
  EXPECT_NE(meta.find("preset=T10I400D100K\n"), std::string::npos);
  EXPECT_NE(meta.find("seed=9\n"), std::string::npos);
  EXPECT_NE(meta.find("prng=mt19937_64\n"), std::string::npos);
}

}  // namespace
}  // namespace corrpairs
