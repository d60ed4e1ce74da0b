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

#include "corrpairs/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace corrpairs {

void GenParams::validate() const {
  if (!(avg_size >= 1.0)) throw std::invalid_argument("avg_size must be >= 1");
  if (static_cast<double>(n_items) < avg_size) {
    throw std::invalid_argument("n_items must be >= avg_size");
  }
  if (n_patterns == 0) throw std::invalid_argument("n_patterns must be positive");
  if (!(avg_pattern_len >= 1.0)) throw std::invalid_argument("avg_pattern_len must be >= 1");
  if (!(corruption >= 0.0 && corruption < 1.0)) {
    throw std::invalid_argument("corruption must be in [0, 1)");
  }
}

namespace {

bool parse_number(std::string_view& s, std::uint64_t& value) {
  const char* begin = s.data();
  auto [ptr, ec] = std::from_chars(begin, begin + s.size(), value);
  if (ec != std::errc() || ptr == begin) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - begin));
  return true;
}

}  // namespace

GenParams preset(std::string_view name) {
  const auto fail = [&] {
    return std::invalid_argument("cannot parse dataset preset '" + std::string(name) +
                                 "' (expected T<avg>I<items>D<count>[K|M])");
  };
  std::string_view s = name;
  std::uint64_t avg = 0, items = 0, count = 0;
  if (s.empty() || s.front() != 'T') throw fail();
  s.remove_prefix(1);
  if (!parse_number(s, avg) || s.empty() || s.front() != 'I') throw fail();
  s.remove_prefix(1);
  if (!parse_number(s, items) || s.empty() || s.front() != 'D') throw fail();
  s.remove_prefix(1);
  if (!parse_number(s, count)) throw fail();
  if (s == "K") {
    count *= 1000;
  } else if (s == "M") {
    count *= 1000000;
  } else if (!s.empty()) {
    throw fail();
  }
  if (avg == 0 || items == 0 || items > std::numeric_limits<std::uint32_t>::max()) throw fail();
  GenParams p;
  p.avg_size = static_cast<double>(avg);
  p.n_items = static_cast<std::uint32_t>(items);
  p.n_transactions = count;
  return p;
}

std::string preset_name(const GenParams& p) {
  std::string d = std::to_string(p.n_transactions);
  if (p.n_transactions >= 1000000 && p.n_transactions % 1000000 == 0) {
    d = std::to_string(p.n_transactions / 1000000) + "M";
  } else if (p.n_transactions >= 1000 && p.n_transactions % 1000 == 0) {
    d = std::to_string(p.n_transactions / 1000) + "K";
  }
  char avg[32];
  std::snprintf(avg, sizeof avg, "%g", p.avg_size);
  return "T" + std::string(avg) + "I" + std::to_string(p.n_items) + "D" + d;
}

namespace {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * n); }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  std::uint64_t poisson(double mean) {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    // The tail beyond 10x the mean carries no mass at double precision.
    const auto limit = static_cast<std::uint64_t>(10.0 * mean + 20.0);
    while (u >= cdf && k < limit) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

struct Pattern {
  std::vector<ItemId> items;
};

std::vector<Pattern> draw_patterns(const GenParams& params, Stream& rng) {
  std::vector<Pattern> patterns(params.n_patterns);
  std::vector<char> used(params.n_items, 0);
  const Pattern* prev = nullptr;
  for (auto& pat : patterns) {
    auto len = std::max<std::uint64_t>(1, rng.poisson(params.avg_pattern_len));
    len = std::min<std::uint64_t>(len, params.n_items);
    // Share an exponentially distributed fraction (mean 0.5) with the
    // previous pattern.
    if (prev) {
      const double frac = std::min(1.0, rng.exponential(0.5));
      auto reuse = static_cast<std::size_t>(std::lround(frac * static_cast<double>(len)));
      reuse = std::min(reuse, prev->items.size());
      std::vector<ItemId> pool = prev->items;
      for (std::size_t k = 0; k < reuse; ++k) {
        const auto pick = k + rng.below(pool.size() - k);
        std::swap(pool[k], pool[pick]);
        pat.items.push_back(pool[k]);
        used[pool[k]] = 1;
      }
    }
    while (pat.items.size() < len) {
      const auto item = static_cast<ItemId>(rng.below(params.n_items));
      if (used[item]) continue;
      used[item] = 1;
      pat.items.push_back(item);
    }
    for (ItemId i : pat.items) used[i] = 0;
    prev = &pat;
  }
  return patterns;
}

}  // namespace

TransactionDatabase generate(const GenParams& params) {
  params.validate();
  Stream rng(params.seed);

  TransactionDatabase db;
  for (std::uint32_t i = 0; i < params.n_items; ++i) db.intern(std::to_string(i));

  const std::vector<Pattern> patterns = draw_patterns(params, rng);
  std::vector<double> cumulative(patterns.size());
  double total = 0.0;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    total += rng.exponential(1.0);
    cumulative[k] = total;
  }
  for (double& c : cumulative) c /= total;

  std::vector<char> in_txn(params.n_items, 0);
  std::vector<ItemId> txn;
  for (std::uint64_t t = 0; t < params.n_transactions; ++t) {
    auto target = std::max<std::uint64_t>(1, rng.poisson(params.avg_size));
    target = std::min<std::uint64_t>(target, params.n_items);
    txn.clear();
    const std::uint64_t max_draws = 64 + 8 * target;
    for (std::uint64_t draws = 0; txn.size() < target && draws < max_draws; ++draws) {
      const double u = rng.uniform();
      const auto k = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      const Pattern& pat = patterns[std::min(k, patterns.size() - 1)];
      for (ItemId item : pat.items) {
        if (rng.uniform() < params.corruption) continue;
        if (in_txn[item]) continue;
        in_txn[item] = 1;
        txn.push_back(item);
        if (txn.size() == target) break;  // overshoot is truncated
      }
    }
    // Patterns could not fill the target: top up with uniform items.
    while (txn.size() < target) {
      const auto item = static_cast<ItemId>(rng.below(params.n_items));
      if (in_txn[item]) continue;
      in_txn[item] = 1;
      txn.push_back(item);
    }
    for (ItemId i : txn) in_txn[i] = 0;
    db.add_transaction(txn);
  }
  return db;
}

void write_meta(std::ostream& out, const GenParams& p) {
  out << "preset=" << preset_name(p) << '\n'
      << "n_transactions=" << p.n_transactions << '\n'
      << "n_items=" << p.n_items << '\n'
      << "avg_size=" << p.avg_size << '\n'
      << "n_patterns=" << p.n_patterns << '\n'
      << "avg_pattern_len=" << p.avg_pattern_len << '\n'
      << "corruption=" << p.corruption << '\n'
      << "seed=" << p.seed << '\n'
      << "prng=mt19937_64\n";
}

void save_meta_file(const std::filesystem::path& path, const GenParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write meta file: " + path.string());
  write_meta(out, params);
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace corrpairs
