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

#include "corrpairs/fptree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace corrpairs {

FPTree::FPTree(std::vector<ItemId> rank_order) {
  nodes_.emplace_back();
  header_.reserve(rank_order.size());
  for (std::uint32_t r = 0; r < rank_order.size(); ++r) {
    const ItemId item = rank_order[r];
    if (item == kRootItem) throw std::invalid_argument("reserved item id in rank order");
    if (item >= rank_.size()) rank_.resize(static_cast<std::size_t>(item) + 1, kUnranked);
    if (rank_[item] != kUnranked) {
      throw std::invalid_argument("item " + std::to_string(item) + " ranked twice");
    }
    rank_[item] = r;
    header_.push_back(HeaderEntry{item});
  }
}

std::vector<ItemId> FPTree::rank_order(const SupportTable& supports) {
  std::vector<ItemId> order(supports.count.size());
  std::iota(order.begin(), order.end(), ItemId{0});
  std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    return supports.count[a] > supports.count[b];
  });
  return order;
}

FPTree FPTree::build(const TransactionDatabase& db, const SupportTable& supports) {
  FPTree tree(rank_order(supports));
  std::vector<ItemId> sorted;
  for (const auto& t : db.transactions()) {
    sorted.assign(t.begin(), t.end());
    std::sort(sorted.begin(), sorted.end(),
              [&](ItemId a, ItemId b) { return tree.rank_[a] < tree.rank_[b]; });
    tree.insert(sorted);
  }
  return tree;
}

std::uint32_t FPTree::rank(ItemId item) const {
  if (!contains(item)) throw std::invalid_argument("item " + std::to_string(item) + " not in tree");
  return rank_[item];
}

std::vector<ItemId> FPTree::sort_by_rank(std::span<const ItemId> items) const {
  std::vector<ItemId> out(items.begin(), items.end());
  std::sort(out.begin(), out.end(), [&](ItemId a, ItemId b) { return rank(a) < rank(b); });
  return out;
}

void FPTree::insert(std::span<const ItemId> items, std::uint64_t count) {
  if (count == 0) return;
  // Validate before mutating so a rejected insert leaves the tree untouched.
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto r = rank(items[k]);
    if (k > 0 && rank(items[k - 1]) >= r) {
      throw std::invalid_argument("transaction not in strict rank order");
    }
  }
  NodeIndex cur = 0;
  for (ItemId item : items) {
    const std::uint32_t r = rank_[item];
    auto& children = nodes_[cur].children;
    if (auto it = children.find(r); it != children.end()) {
      cur = it->second;
      nodes_[cur].count += count;
    } else {
      const auto idx = static_cast<NodeIndex>(nodes_.size());
      children.emplace(r, idx);
      FPNode fresh;
      fresh.item = item;
      fresh.count = count;
      fresh.parent = cur;
      nodes_.push_back(std::move(fresh));
      auto& entry = header_[r];
      if (entry.tail == kNoNode) {
        entry.head = idx;
      } else {
        nodes_[entry.tail].next_same_item = idx;
      }
      entry.tail = idx;
      cur = idx;
    }
    header_[r].total += count;
  }
}

namespace {

void dump_node(const FPTree& tree, NodeIndex idx, int depth, const TransactionDatabase* names,
               std::ostringstream& out) {
  const FPNode& n = tree.node(idx);
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (n.item == kRootItem) {
    out << "null";
  } else {
    if (names) {
      out << names->item_name(n.item);
    } else {
      out << n.item;
    }
    out << ':' << n.count;
  }
  out << '\n';
  for (const auto& [rank, child] : n.children) dump_node(tree, child, depth + 1, names, out);
}

}  // namespace

std::string FPTree::dump(const TransactionDatabase& names) const {
  std::ostringstream out;
  dump_node(*this, 0, 0, &names, out);
  return out.str();
}

std::string FPTree::dump() const {
  std::ostringstream out;
  dump_node(*this, 0, 0, nullptr, out);
  return out.str();
}

PatternBase conditional_pattern_base(const FPTree& tree, ItemId item) {
  PatternBase base;
  base.base_item = item;
  for (NodeIndex n = tree.header_entry(item).head; n != kNoNode;
       n = tree.node(n).next_same_item) {
    PatternBase::Path path;
    path.count = tree.node(n).count;
    for (NodeIndex p = tree.node(n).parent; p != 0; p = tree.node(p).parent) {
      path.prefix.push_back(tree.node(p).item);
    }
    std::reverse(path.prefix.begin(), path.prefix.end());
    base.paths.push_back(std::move(path));
  }
  return base;
}

std::map<ItemId, std::uint64_t> cooccurrence_counts(const PatternBase& base) {
  std::map<ItemId, std::uint64_t> out;
  for (const auto& path : base.paths) {
    for (ItemId i : path.prefix) out[i] += path.count;
  }
  return out;
}

void accumulate_cooccurrence(const FPTree& tree, ItemId item, std::span<std::uint64_t> counts,
                             std::vector<ItemId>& touched) {
  for (NodeIndex n = tree.header_entry(item).head; n != kNoNode;
       n = tree.node(n).next_same_item) {
    const std::uint64_t c = tree.node(n).count;
    for (NodeIndex p = tree.node(n).parent; p != 0; p = tree.node(p).parent) {
      const ItemId other = tree.node(p).item;
      if (counts[other] == 0) touched.push_back(other);
      counts[other] += c;
    }
  }
}

}  // namespace corrpairs
