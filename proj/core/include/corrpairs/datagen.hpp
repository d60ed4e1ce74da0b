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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "corrpairs/txdb.hpp"

namespace corrpairs {

/// Parameters of the synthetic basket generator.
///
/// The first three fields are the dataset shape (T<avg>I<items>D<count>).
/// The rest drive the latent pattern pool: transactions are assembled from
/// weighted, partially corrupted patterns so that correlated pairs exist.
struct GenParams {
  std::uint64_t n_transactions = 0;
  std::uint32_t n_items = 0;
  double avg_size = 10.0;
  std::uint32_t n_patterns = 1000;
  double avg_pattern_len = 4.0;
  /// Probability that an item of a picked pattern is dropped.
  double corruption = 0.5;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when the parameters are inconsistent.
  void validate() const;
  friend bool operator==(const GenParams&, const GenParams&) = default;
};

/// Parses `T<avg>I<items>D<count>`; the count accepts a K (x1000) or M
/// (x1000000) suffix. Pattern settings keep their defaults.
GenParams preset(std::string_view name);

/// Canonical `T..I..D..` name for the shape fields of `p`.
std::string preset_name(const GenParams& p);

/// Deterministic for fixed params. Items are named "0".."n_items-1"; items
/// that no pattern picks stay in the vocabulary with zero support.
///
/// Random stream: std::mt19937_64 seeded with `seed`; a uniform double is the
/// top 53 bits of one draw times 2^-53. Poisson draws use inversion,
/// exponential draws use -log(1 - u).
TransactionDatabase generate(const GenParams& params);

/// `key=value` lines describing params, written next to generated baskets.
void write_meta(std::ostream& out, const GenParams& params);
void save_meta_file(const std::filesystem::path& path, const GenParams& params);

}  // namespace corrpairs
