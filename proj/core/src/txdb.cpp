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

#include "corrpairs/txdb.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace corrpairs {

ItemId TransactionDatabase::intern(std::string_view token) {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  const auto id = static_cast<ItemId>(names_.size());
  names_.emplace_back(token);
  ids_.emplace(names_.back(), id);
  return id;
}

void TransactionDatabase::declare_items(std::span<const std::string> tokens) {
  for (const auto& t : tokens) intern(t);
}

void TransactionDatabase::add_transaction(std::span<const ItemId> items) {
  Transaction t(items.begin(), items.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (!t.empty() && t.back() >= names_.size()) {
    throw std::out_of_range("transaction references unknown item id " +
                            std::to_string(t.back()));
  }
  transactions_.push_back(std::move(t));
}

void TransactionDatabase::add_transaction_tokens(std::span<const std::string> tokens) {
  std::vector<ItemId> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens) ids.push_back(intern(tok));
  add_transaction(ids);
}

std::optional<ItemId> TransactionDatabase::find_item(std::string_view token) const {
  if (auto it = ids_.find(token); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::uint64_t TransactionDatabase::total_items() const {
  std::uint64_t n = 0;
  for (const auto& t : transactions_) n += t.size();
  return n;
}

SupportTable count_supports(const TransactionDatabase& db) {
  SupportTable s;
  s.count.assign(db.n_items(), 0);
  s.n_transactions = db.size();
  for (const auto& t : db.transactions()) {
    for (ItemId i : t) ++s.count[i];
  }
  return s;
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

TransactionDatabase read_baskets(std::istream& in) {
  TransactionDatabase db;
  std::string line;
  std::vector<ItemId> ids;
  while (std::getline(in, line)) {
    ids.clear();
    std::size_t pos = 0;
    while (pos < line.size() && is_blank(line[pos])) ++pos;
    if (pos == line.size() || line[pos] == '#') continue;
    while (pos < line.size()) {
      std::size_t end = pos;
      while (end < line.size() && !is_blank(line[end])) ++end;
      ids.push_back(db.intern(std::string_view(line).substr(pos, end - pos)));
      pos = end;
      while (pos < line.size() && is_blank(line[pos])) ++pos;
    }
    db.add_transaction(ids);
  }
  if (in.bad()) throw std::ios_base::failure("read error while loading baskets");
  return db;
}

TransactionDatabase load_basket_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open basket file: " + path.string());
  return read_baskets(in);
}

void write_baskets(std::ostream& out, const TransactionDatabase& db) {
  for (const auto& t : db.transactions()) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) out << ' ';
      out << db.item_name(t[k]);
    }
    out << '\n';
  }
}

void save_basket_file(const std::filesystem::path& path, const TransactionDatabase& db) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write basket file: " + path.string());
  write_baskets(out, db);
  out.flush();
  if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

TransactionDatabase read_categorical(std::istream& in, const CategoricalSchema& schema) {
  if (schema.delimiter == '\n' || schema.delimiter == '\0' || schema.delimiter == '\r') {
    throw FormatError("unsupported delimiter");
  }
  TransactionDatabase db;
  std::string line;
  std::optional<std::size_t> width;
  std::size_t lineno = 0;
  bool header_pending = schema.skip_header;
  std::vector<std::string> cells;
  std::vector<std::string> items;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    cells.clear();
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, schema.delimiter)) cells.push_back(cell);
    if (line.back() == schema.delimiter) cells.emplace_back();
    if (!width) {
      width = cells.size();
    } else if (cells.size() != *width) {
      throw FormatError("ragged row at line " + std::to_string(lineno) + ": expected " +
                        std::to_string(*width) + " columns, got " +
                        std::to_string(cells.size()));
    }
    items.clear();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (std::find(schema.ignore_columns.begin(), schema.ignore_columns.end(), c) !=
          schema.ignore_columns.end()) {
        continue;
      }
      const bool missing = cells[c].empty() || cells[c] == schema.missing_token;
      if (missing && schema.missing == MissingPolicy::kSkip) continue;
      items.push_back("col" + std::to_string(c) + "=" +
                      (cells[c].empty() ? schema.missing_token : cells[c]));
    }
    db.add_transaction_tokens(items);
  }
  if (in.bad()) throw std::ios_base::failure("read error while converting table");
  return db;
}

TransactionDatabase convert_categorical(const std::filesystem::path& path,
                                        const CategoricalSchema& schema) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open table: " + path.string());
  return read_categorical(in, schema);
}

}  // namespace corrpairs
