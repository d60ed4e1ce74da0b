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

#include "corrpairs/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "corrpairs/datagen.hpp"

namespace corrpairs {

std::vector<double> BenchPlan::default_thetas() {
  std::vector<double> out;
  for (int k = 9; k >= 1; --k) out.push_back(k / 10.0);
  return out;
}

void BenchPlan::validate() const {
  if (datasets.empty()) throw std::invalid_argument("bench plan has no datasets");
  if (algorithms.empty()) throw std::invalid_argument("bench plan has no algorithms");
  if (thetas.empty()) throw std::invalid_argument("bench plan has no thetas");
  if (repeats == 0) throw std::invalid_argument("repeats must be at least 1");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    validate_theta(thetas[i]);
    if (i > 0 && !(thetas[i] < thetas[i - 1])) {
      throw std::invalid_argument("thetas must be strictly descending");
    }
  }
}

std::vector<std::string> desk_presets() {
  return {"T10I400D10K", "T10I600D10K", "T10I800D10K", "T10I1000D10K"};
}

TransactionDatabase resolve_dataset(const std::string& dataset, std::uint64_t seed) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(dataset, ec)) return load_basket_file(dataset);
  GenParams params = preset(dataset);
  params.seed = seed;
  return generate(params);
}

namespace {

MiningReport run_one(const TransactionDatabase& db, Algorithm algo, double theta,
                     std::size_t brute_max_items) {
  return mine(db, MiningQuery(theta, algo), brute_max_items);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchPlan& plan, const BenchProgress& progress) {
  plan.validate();
  std::vector<BenchRow> rows;
  for (const auto& dataset : plan.datasets) {
    TransactionDatabase db;
    std::string load_error;
    try {
      db = resolve_dataset(dataset, plan.seed);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (Algorithm algo : plan.algorithms) {
      for (double theta : plan.thetas) {
        BenchRow row;
        row.dataset = dataset;
        row.algorithm = algo;
        row.theta = theta;
        if (!load_error.empty()) {
          row.status = "error: " + load_error;
        } else {
          try {
            std::vector<double> times;
            for (unsigned r = 0; r < plan.repeats; ++r) {
              MiningReport rep = run_one(db, algo, theta, plan.brute_max_items);
              times.push_back(rep.elapsed_ms());
              row.pairs_considered = rep.stats.pairs_considered;
              row.pairs_pruned = rep.stats.pairs_pruned_by_bound;
              row.pairs_refined = rep.stats.pairs_refined;
              row.results_count = rep.results.size();
            }
            row.elapsed_ms = median(std::move(times));
          } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
          }
        }
        if (progress) progress(row);
        rows.push_back(std::move(row));
      }
    }
  }

  // Algorithms must agree on the result count for each (dataset, theta).
  std::map<std::pair<std::string, double>, std::vector<BenchRow*>> cells;
  for (auto& row : rows) {
    if (row.status == "ok") cells[{row.dataset, row.theta}].push_back(&row);
  }
  for (auto& [key, group] : cells) {
    const bool agree = std::all_of(group.begin(), group.end(), [&](const BenchRow* r) {
      return r->results_count == group.front()->results_count;
    });
    if (!agree) {
      for (BenchRow* r : group) r->status = "mismatch";
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    return std::make_tuple(std::cref(x.dataset), to_string(x.algorithm), -x.theta) <
           std::make_tuple(std::cref(y.dataset), to_string(y.algorithm), -y.theta);
  });
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "dataset,algorithm,theta,elapsed_ms,pairs_considered,pairs_pruned,results_count,status\n";
  char buf[64];
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    std::snprintf(buf, sizeof buf, "%.3f", r.elapsed_ms);
    out << r.dataset << ',' << to_string(r.algorithm) << ',' << r.theta << ',' << buf << ','
        << r.pairs_considered << ',' << r.pairs_pruned << ',' << r.results_count << ',' << status
        << '\n';
  }
}

}  // namespace corrpairs
