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

// corrpairs: mine strongly correlated item pairs from basket files.
//
// Exit codes: 0 success, 1 verification or mining mismatch, 2 usage or
// environment error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corrpairs/bench.hpp"
#include "corrpairs/datagen.hpp"
#include "corrpairs/miners.hpp"
#include "corrpairs/txdb.hpp"

namespace {

using namespace corrpairs;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

constexpr const char* kBruteCapEnv = "CORRPAIRS_BRUTE_MAX_ITEMS";

std::size_t brute_cap() {
  if (const char* env = std::getenv(kBruteCapEnv)) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(kBruteCapEnv) + " is not a number: " + env);
    }
  }
  return BruteOptions{}.max_items;
}

// Writes to the file if a path was given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::ios_base::failure("cannot open output: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void close() {
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw std::ios_base::failure("write failed");
    }
  }

 private:
  std::ofstream file_;
};

struct GenArgs {
  std::string preset_name;
  std::optional<std::uint64_t> transactions;
  std::optional<std::uint32_t> items;
  std::optional<double> avg_size;
  GenParams defaults;
  std::string output;
};

int run_gen(GenArgs& args) {
  GenParams p;
  if (!args.preset_name.empty()) {
    p = preset(args.preset_name);
  } else if (!args.transactions || !args.items || !args.avg_size) {
    throw CLI::ValidationError("gen", "either --preset or all of --transactions, --items and --avg-size");
  }
  if (args.transactions) p.n_transactions = *args.transactions;
  if (args.items) p.n_items = *args.items;
  if (args.avg_size) p.avg_size = *args.avg_size;
  p.n_patterns = args.defaults.n_patterns;
  p.avg_pattern_len = args.defaults.avg_pattern_len;
  p.corruption = args.defaults.corruption;
  p.seed = args.defaults.seed;
  p.validate();

  const TransactionDatabase db = generate(p);
  save_basket_file(args.output, db);
  save_meta_file(args.output + ".meta", p);
  std::cerr << "wrote " << db.size() << " transactions to " << args.output << '\n';
  return kOk;
}

struct MineArgs {
  std::string dataset;
  double theta = 0.5;
  std::string algo = "tcp";
  std::string output;
  unsigned threads = 1;
};

int run_mine(const MineArgs& args) {
  const MiningQuery query(args.theta, parse_algorithm(args.algo));
  const TransactionDatabase db = load_basket_file(args.dataset);
  MiningReport report;
  if (query.algorithm() == Algorithm::kTcp && args.threads > 1) {
    report = mine_tcp(db, query.theta(), TcpOptions{args.threads});
  } else {
    report = mine(db, query, brute_cap());
  }
  Output out(args.output);
  write_results_csv(out.stream(), db, report.results);
  out.close();
  std::cerr << stats_line(report) << '\n';
  return kOk;
}

struct BenchArgs {
  std::vector<std::string> datasets;
  std::vector<double> thetas = BenchPlan::default_thetas();
  std::vector<std::string> algos = {"tcp", "taper"};
  unsigned repeats = 3;
  std::uint64_t seed = 1;
  std::string output;
};

int run_bench_cmd(const BenchArgs& args) {
  BenchPlan plan;
  plan.datasets = args.datasets.empty() ? desk_presets() : args.datasets;
  plan.thetas = args.thetas;
  plan.algorithms.clear();
  for (const auto& a : args.algos) plan.algorithms.push_back(parse_algorithm(a));
  plan.repeats = args.repeats;
  plan.seed = args.seed;
  plan.brute_max_items = brute_cap();
  plan.validate();

  const auto rows = run_bench(plan, [](const BenchRow& r) {
    std::cerr << r.dataset << ' ' << to_string(r.algorithm) << " theta=" << r.theta
              << " elapsed_ms=" << r.elapsed_ms << ' ' << r.status << '\n';
  });
  Output out(args.output);
  write_bench_csv(out.stream(), rows);
  out.close();
  const bool clean = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.status == "ok"; });
  return clean ? kOk : kMismatch;
}

struct VerifyArgs {
  std::string dataset;
  std::vector<double> thetas = BenchPlan::default_thetas();
  std::string expected;
};

int run_verify(const VerifyArgs& args) {
  for (double t : args.thetas) validate_theta(t);
  const TransactionDatabase db = load_basket_file(args.dataset);
  const std::size_t cap = brute_cap();
  if (db.n_items() > cap) {
    std::cerr << "oracle unavailable: " << db.n_items() << " items exceeds brute-force cap " << cap
              << " (set " << kBruteCapEnv << ")\n";
    return kUsage;
  }
  if (!args.expected.empty() && args.thetas.size() != 1) {
    throw CLI::ValidationError("--expected", "requires exactly one --theta");
  }

  bool ok = true;
  const MinerSet miners = MinerSet::defaults(cap);
  for (double theta : args.thetas) {
    const EquivalenceResult r = verify_equivalence(db, theta, miners);
    std::cout << "theta=" << theta << ' ' << (r.equivalent ? "ok" : "MISMATCH") << '\n';
    for (const auto& line : r.diff) std::cout << "  " << line << '\n';
    ok = ok && r.equivalent;
  }
  if (!args.expected.empty()) {
    std::ifstream in(args.expected);
    if (!in) throw std::ios_base::failure("cannot open expected results: " + args.expected);
    MiningReport stored;
    stored.algorithm = Algorithm::kBrute;
    stored.results = read_results_csv(in, db);
    MiningReport fresh = mine_brute(db, args.thetas.front(), BruteOptions{cap});
    // The stored file has six decimals of phi.
    const EquivalenceResult r = compare_results(db, fresh, stored, 5e-7);
    std::cout << "expected=" << args.expected << ' ' << (r.equivalent ? "ok" : "MISMATCH") << '\n';
    for (const auto& line : r.diff) std::cout << "  " << line << '\n';
    ok = ok && r.equivalent;
  }
  return ok ? kOk : kMismatch;
}

struct ConvertArgs {
  std::string input;
  std::string output;
  std::string delimiter = ",";
  bool skip_header = false;
  bool itemize_missing = false;
  std::string missing_token = "?";
  std::vector<std::size_t> ignore;
};

int run_convert(const ConvertArgs& args) {
  CategoricalSchema schema;
  if (args.delimiter == "\\t" || args.delimiter == "tab") {
    schema.delimiter = '\t';
  } else if (args.delimiter.size() == 1) {
    schema.delimiter = args.delimiter[0];
  } else {
    throw CLI::ValidationError("--delimiter", "must be a single character, got '" + args.delimiter + "'");
  }
  schema.skip_header = args.skip_header;
  schema.missing = args.itemize_missing ? MissingPolicy::kItemize : MissingPolicy::kSkip;
  schema.missing_token = args.missing_token;
  schema.ignore_columns = args.ignore;
  const TransactionDatabase db = convert_categorical(args.input, schema);
  Output out(args.output);
  write_baskets(out.stream(), db);
  out.close();
  std::cerr << "transactions=" << db.size() << " items=" << db.n_items() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine all item pairs whose phi correlation reaches a threshold"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic basket file");
  gen_cmd->add_option("--preset", gen.preset_name, "Shape as T<avg>I<items>D<count>[K|M]");
  gen_cmd->add_option("--transactions", gen.transactions, "Number of transactions");
  gen_cmd->add_option("--items", gen.items, "Number of items");
  gen_cmd->add_option("--avg-size", gen.avg_size, "Mean transaction length");
  gen_cmd->add_option("--patterns", gen.defaults.n_patterns, "Latent pattern count")->capture_default_str();
  gen_cmd->add_option("--pattern-len", gen.defaults.avg_pattern_len, "Mean pattern length")->capture_default_str();
  gen_cmd->add_option("--corruption", gen.defaults.corruption, "Per-item drop probability")->capture_default_str();
  gen_cmd->add_option("--seed", gen.defaults.seed, "PRNG seed")->capture_default_str();
  gen_cmd->add_option("-o,--output", gen.output, "Basket file to write (meta goes to <output>.meta)")->required();

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Mine pairs with phi >= theta, CSV to --output or stdout");
  mine_cmd->add_option("dataset", mine_args.dataset, "Basket file")->required();
  mine_cmd->add_option("--theta", mine_args.theta, "Correlation threshold in (0, 1]")->required();
  mine_cmd->add_option("--algo", mine_args.algo, "tcp, taper or brute")->capture_default_str();
  mine_cmd->add_option("-o,--output", mine_args.output, "Result CSV path");
  mine_cmd->add_option("--threads", mine_args.threads, "Worker threads for tcp")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep theta over datasets and algorithms");
  bench_cmd->add_option("--dataset", bench.datasets, "Basket files or presets (default: desk presets)");
  bench_cmd->add_option("--preset", bench.datasets, "Alias of --dataset");
  bench_cmd->add_option("--theta", bench.thetas, "Thresholds, strictly descending");
  bench_cmd->add_option("--algo", bench.algos, "Algorithms to run");
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per cell; the median is reported")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed for preset datasets")->capture_default_str();
  bench_cmd->add_option("-o,--output", bench.output, "Bench CSV path");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check tcp and taper against the brute-force oracle");
  verify_cmd->add_option("dataset", verify.dataset, "Basket file")->required();
  verify_cmd->add_option("--theta", verify.thetas, "Thresholds (default 0.9 .. 0.1)");
  verify_cmd->add_option("--expected", verify.expected, "Stored result CSV to compare at the single --theta");

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "Turn a categorical table into baskets");
  convert_cmd->add_option("input", convert.input, "Delimited table")->required();
  convert_cmd->add_option("-o,--output", convert.output, "Basket file path");
  convert_cmd->add_option("--delimiter", convert.delimiter, "Single character, or 'tab'")->capture_default_str();
  convert_cmd->add_flag("--skip-header", convert.skip_header, "Drop the first row");
  convert_cmd->add_flag("--itemize-missing", convert.itemize_missing, "Emit col<i>=<token> for missing cells");
  convert_cmd->add_option("--missing-token", convert.missing_token, "Marker of a missing cell")->capture_default_str();
  convert_cmd->add_option("--ignore-column", convert.ignore, "Zero-based column to drop (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*mine_cmd) return run_mine(mine_args);
    if (*bench_cmd) return run_bench_cmd(bench);
    if (*verify_cmd) return run_verify(verify);
    if (*convert_cmd) return run_convert(convert);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OracleUnavailableError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
