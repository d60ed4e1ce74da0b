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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace corrpairs {

/// Dense item index, contiguous in 0..n_items-1.
using ItemId = std::uint32_t;

/// Items of one transaction, ascending and duplicate-free.
using Transaction = std::vector<ItemId>;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A multiset of transactions over an interned item vocabulary.
///
/// Ids are handed out in first-interned order. Once populated the database is
/// treated as immutable and may be shared between concurrent readers.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;

  /// Returns the id for `token`, assigning the next free id on first sight.
  ItemId intern(std::string_view token);

  /// Declares items without emitting a transaction; fixes their ids.
  void declare_items(std::span<const std::string> tokens);

  /// Appends a transaction. Duplicates are collapsed; ids must be < n_items().
  void add_transaction(std::span<const ItemId> items);
  void add_transaction_tokens(std::span<const std::string> tokens);

  std::size_t size() const { return transactions_.size(); }
  bool empty() const { return transactions_.empty(); }
  std::size_t n_items() const { return names_.size(); }

  const std::vector<Transaction>& transactions() const { return transactions_; }
  const Transaction& operator[](std::size_t i) const { return transactions_[i]; }

  const std::string& item_name(ItemId id) const { return names_.at(id); }
  const std::vector<std::string>& item_names() const { return names_; }
  std::optional<ItemId> find_item(std::string_view token) const;

  /// Sum of transaction lengths.
  std::uint64_t total_items() const;

  friend bool operator==(const TransactionDatabase&, const TransactionDatabase&) = default;

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<Transaction> transactions_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, ItemId, StringHash, std::equal_to<>> ids_;
};

/// Per-item transaction counts. Integer counts are authoritative; relative
/// supports are derived on demand.
struct SupportTable {
  std::vector<std::uint64_t> count;
  std::uint64_t n_transactions = 0;

  double relative(ItemId id) const {
    return static_cast<double>(count[id]) / static_cast<double>(n_transactions);
  }
  /// True when the item occurs in no transaction or in every transaction.
  bool is_constant(ItemId id) const {
    return count[id] == 0 || count[id] == n_transactions;
  }
};

SupportTable count_supports(const TransactionDatabase& db);

// Basket format: one transaction per line, tokens separated by spaces or
// tabs. Blank lines and lines starting with '#' are skipped.
TransactionDatabase read_baskets(std::istream& in);
TransactionDatabase load_basket_file(const std::filesystem::path& path);
void write_baskets(std::ostream& out, const TransactionDatabase& db);
void save_basket_file(const std::filesystem::path& path, const TransactionDatabase& db);

enum class MissingPolicy {
  kSkip,     ///< a missing cell contributes no item
  kItemize,  ///< a missing cell becomes the item `col<i>=<missing token>`
};

/// Layout of a categorical table for convert_categorical.
struct CategoricalSchema {
  char delimiter = ',';
  bool skip_header = false;
  std::string missing_token = "?";
  MissingPolicy missing = MissingPolicy::kSkip;
  /// Zero-based columns left out of the conversion (e.g. a label column).
  std::vector<std::size_t> ignore_columns;
};

/// Every (column, value) pair becomes the item `col<i>=<value>`; each record
/// becomes one transaction. Throws FormatError on ragged rows.
TransactionDatabase read_categorical(std::istream& in, const CategoricalSchema& schema);
TransactionDatabase convert_categorical(const std::filesystem::path& path,
                                        const CategoricalSchema& schema);

}  // namespace corrpairs
