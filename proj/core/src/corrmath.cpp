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

#include "corrpairs/corrmath.hpp"

#include <cmath>
#include <utility>

namespace corrpairs {

namespace {

void require_non_constant(double sup) {
  if (!(sup > 0.0 && sup < 1.0)) {
    throw ConstantItemError("phi undefined for item with support " + std::to_string(sup));
  }
}

}  // namespace

double phi(const PairSupports& s) {
  require_non_constant(s.sup_a);
  require_non_constant(s.sup_b);
  const double num = s.sup_ab - s.sup_a * s.sup_b;
  // Grouped per item so swapping A and B is exact.
  const double den = std::sqrt((s.sup_a * (1.0 - s.sup_a)) * (s.sup_b * (1.0 - s.sup_b)));
  return num / den;
}

double phi_upper_bound(double sup_a, double sup_b) {
  require_non_constant(sup_a);
  require_non_constant(sup_b);
  if (sup_a < sup_b) std::swap(sup_a, sup_b);
  return std::sqrt(sup_b / sup_a) * std::sqrt((1.0 - sup_a) / (1.0 - sup_b));
}

double phi_from_counts(std::uint64_t count_a, std::uint64_t count_b, std::uint64_t count_ab,
                       std::uint64_t n_transactions) {
  const auto n = static_cast<double>(n_transactions);
  return phi({static_cast<double>(count_a) / n, static_cast<double>(count_b) / n,
              static_cast<double>(count_ab) / n});
}

}  // namespace corrpairs
