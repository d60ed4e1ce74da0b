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
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "corrpairs/txdb.hpp"

namespace corrpairs {

using NodeIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();
inline constexpr ItemId kRootItem = std::numeric_limits<ItemId>::max();

/// One prefix-tree node. Children are keyed by the child's rank so traversal
/// follows the header order.
struct FPNode {
  ItemId item = kRootItem;
  std::uint64_t count = 0;
  NodeIndex parent = kNoNode;
  NodeIndex next_same_item = kNoNode;
  std::map<std::uint32_t, NodeIndex> children;
};

struct HeaderEntry {
  ItemId item = 0;
  NodeIndex head = kNoNode;
  NodeIndex tail = kNoNode;
  std::uint64_t total = 0;
};

/// Prefix paths leading to every node of `base_item`, with that node's count.
struct PatternBase {
  struct Path {
    std::vector<ItemId> prefix;  // root-most item first
    std::uint64_t count = 0;
    friend bool operator==(const Path&, const Path&) = default;
  };
  ItemId base_item = 0;
  std::vector<Path> paths;
};

/// FP-tree over every item of a database (no support cut-off).
///
/// Nodes live in an arena; index 0 is the root. The header lists items in
/// rank order: descending support, ties by ascending ItemId. Node-link chains
/// are kept in insertion order. After construction the tree is read-only and
/// queries on it are safe from several threads.
class FPTree {
 public:
  /// Empty tree ranking items in the given order (highest rank first).
  explicit FPTree(std::vector<ItemId> rank_order);

  /// Two-pass construction: rank items by `supports`, insert every
  /// transaction in rank order.
  static FPTree build(const TransactionDatabase& db, const SupportTable& supports);

  /// Items sorted by descending count, ties by ascending id.
  static std::vector<ItemId> rank_order(const SupportTable& supports);

  /// Inserts one rank-sorted, duplicate-free item list `count` times.
  /// Throws std::invalid_argument for unknown items or bad ordering.
  void insert(std::span<const ItemId> items, std::uint64_t count = 1);

  /// Copy of `items` sorted by rank.
  std::vector<ItemId> sort_by_rank(std::span<const ItemId> items) const;

  bool contains(ItemId item) const {
    return item < rank_.size() && rank_[item] != kUnranked;
  }
  std::uint32_t rank(ItemId item) const;

  const std::vector<HeaderEntry>& header() const { return header_; }
  const HeaderEntry& header_entry(ItemId item) const { return header_[rank(item)]; }

  const FPNode& node(NodeIndex i) const { return nodes_[i]; }
  const FPNode& root() const { return nodes_[0]; }
  /// Node count including the root.
  std::size_t node_count() const { return nodes_.size(); }

  /// One node per line, two spaces of indent per depth, `name:count`,
  /// children in rank order. The root prints as `null`.
  std::string dump(const TransactionDatabase& names) const;
  std::string dump() const;

 private:
  static constexpr std::uint32_t kUnranked = std::numeric_limits<std::uint32_t>::max();

  std::vector<FPNode> nodes_;
  std::vector<HeaderEntry> header_;
  std::vector<std::uint32_t> rank_;  // indexed by ItemId
};

PatternBase conditional_pattern_base(const FPTree& tree, ItemId item);

/// Per-item totals over the prefixes of `base`: the header totals of the
/// conditional tree, i.e. co-occurrence counts with the base item.
std::map<ItemId, std::uint64_t> cooccurrence_counts(const PatternBase& base);

/// Same aggregate as cooccurrence_counts(conditional_pattern_base(tree, item))
/// without materialising the paths. `counts` must be zero on entry, sized to
/// the item universe; every item it increments is appended to `touched`.
void accumulate_cooccurrence(const FPTree& tree, ItemId item, std::span<std::uint64_t> counts,
                             std::vector<ItemId>& touched);

}  // namespace corrpairs
