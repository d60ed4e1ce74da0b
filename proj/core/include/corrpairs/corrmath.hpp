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
#include <stdexcept>

namespace corrpairs {

/// Raised when an item has support 0 or 1; phi is undefined for it.
class ConstantItemError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative supports of A, B and the pair AB. Callers keep sup_ab inside
/// [max(0, sup_a + sup_b - 1), min(sup_a, sup_b)].
struct PairSupports {
  double sup_a = 0.0;
  double sup_b = 0.0;
  double sup_ab = 0.0;
};

/// Pearson correlation of two binary variables in support form:
///
///   (sup_ab - sup_a sup_b) / sqrt(sup_a sup_b (1 - sup_a) (1 - sup_b))
double phi(const PairSupports& s);

/// Largest phi attainable by any pair with these marginals. The larger
/// support takes the role of A, giving
///
///   sqrt(sup_b / sup_a) * sqrt((1 - sup_a) / (1 - sup_b)),  sup_a >= sup_b.
double phi_upper_bound(double sup_a, double sup_b);

/// phi over integer transaction counts. All miners go through this so equal
/// counts produce bit-identical coefficients.
double phi_from_counts(std::uint64_t count_a, std::uint64_t count_b, std::uint64_t count_ab,
                       std::uint64_t n_transactions);

}  // namespace corrpairs
