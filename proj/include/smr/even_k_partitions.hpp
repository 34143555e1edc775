#pragma once

// Zero-sum k-block partitions of the symbol set of smr3_even(n) for even k,
// near-orthogonal to its columns. Whole blocks are unions of negation pairs
// taken from one row; when k does not divide n, one or two mixed blocks take
// k/6 pairs from every row.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "smr/base_constructions.hpp"
#include "smr/core.hpp"
#include "smr/verifier.hpp"

namespace smr {

// {x, -x} in one row, x > 0, with the columns holding x and -x.
struct NegationPair {
  Value value;
  int col_pos;
  int col_neg;

  friend bool operator==(const NegationPair&, const NegationPair&) = default;
};

// The negation pairs of a row, by ascending |x|. Zero, if present, is not a
// pair and makes the row fail.
inline std::vector<NegationPair> negation_pairs(const SparseRectangle& rect, int row) {
  if (row < 0 || row >= rect.rows()) detail::fail(ErrorCode::invalid_argument, detail::concat("row ", row, " out of range"));
  std::map<Value, int> col;
  for (const Cell& c : rect.row(row)) col.emplace(c.value, c.col);
  std::vector<NegationPair> out;
  for (const auto& [v, c] : col) {
    const auto partner = col.find(-v);
    if (v == 0 || partner == col.end()) {
      detail::fail(ErrorCode::precondition, detail::concat("row ", row, " is not closed under negation at ", v));
    }
    if (v > 0) out.push_back({v, c, partner->second});
  }
  return out;
}

namespace detail {

// Picks `per_row[i]` unused pairs from every row for each of `blocks` mixed
// blocks, so that inside one mixed block all columns differ. The first branch
// of the search is the greedy ascending sweep; later branches backtrack.
class MixedPieceSelector {
 public:
  MixedPieceSelector(const std::vector<std::vector<NegationPair>>& pairs, std::vector<std::vector<bool>>& taken, int per_row, int blocks,
                     std::uint64_t max_nodes)
      : pairs_(pairs), taken_(taken), per_row_(per_row), blocks_(blocks), max_nodes_(max_nodes) {}

  // Chosen pair indices, result[block][row].
  std::optional<std::vector<std::vector<std::vector<std::size_t>>>> run(std::vector<std::set<int>> seed_cols = {}) {
    seed_cols.resize(static_cast<std::size_t>(blocks_));
    cols_ = std::move(seed_cols);
    chosen_.assign(static_cast<std::size_t>(blocks_), std::vector<std::vector<std::size_t>>(pairs_.size()));
    if (!fill(0, 0, 0)) return std::nullopt;
    return chosen_;
  }

 private:
  bool fill(int block, std::size_t row, std::size_t from) {
    if (block == blocks_) return true;
    if (row == pairs_.size()) return fill(block + 1, 0, 0);
    auto& mine = chosen_[block][row];
    if (static_cast<int>(mine.size()) == per_row_) return fill(block, row + 1, 0);
    auto& cols = cols_[block];
    for (std::size_t i = from; i < pairs_[row].size(); ++i) {
      if (taken_[row][i]) continue;
      const NegationPair& pr = pairs_[row][i];
      if (cols.count(pr.col_pos) || cols.count(pr.col_neg)) continue;
      if (++nodes_ > max_nodes_) return false;
      taken_[row][i] = true;
      cols.insert(pr.col_pos);
      cols.insert(pr.col_neg);
      mine.push_back(i);
      if (fill(block, row, i + 1)) return true;
      mine.pop_back();
      cols.erase(pr.col_pos);
      cols.erase(pr.col_neg);
      taken_[row][i] = false;
    }
    return false;
  }

  const std::vector<std::vector<NegationPair>>& pairs_;
  std::vector<std::vector<bool>>& taken_;
  int per_row_;
  int blocks_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::set<int>> cols_;
  std::vector<std::vector<std::vector<std::size_t>>> chosen_;
};

inline void append_pair(std::vector<Value>& out, const NegationPair& pr) {
  out.push_back(pr.value);
  out.push_back(-pr.value);
}

}  // namespace detail

// Partition of {±1..±3n/2} into 3n/k zero-sum k-blocks, near-orthogonal to
// the columns of smr3_even(n). Needs n, k even, k >= 4, k | 3n, k <= n.
inline Partition build_partition_even(int n, int k) {
  if (n < 2 || n % 2 != 0 || k < 4 || k % 2 != 0 || k > n || (3 * n) % k != 0) {
    detail::fail(ErrorCode::inadmissible, detail::concat("no even-k partition for (n,k)=(", n, ",", k, ")"));
  }
  const SparseRectangle base = smr3_even(n);
  const int r = n % k;
  int mixed = 0;
  if (r == 0) {
    mixed = 0;
  } else if (3 * r == k) {
    mixed = 1;
  } else if (3 * r == 2 * k) {
    mixed = 2;
  } else {
    detail::fail(ErrorCode::inadmissible, detail::concat("n mod k = ", r, " is not 0, k/3 or 2k/3"));
  }

  std::vector<std::vector<NegationPair>> pairs;
  for (int row = 0; row < 3; ++row) pairs.push_back(negation_pairs(base, row));
  std::vector<std::vector<bool>> taken(3);
  for (int row = 0; row < 3; ++row) taken[row].assign(pairs[row].size(), false);

  std::vector<Block> blocks;
  if (mixed > 0) {
    detail::MixedPieceSelector selector(pairs, taken, k / 6, mixed, 5'000'000);
    const auto picked = selector.run();
    if (!picked) {
      detail::fail(ErrorCode::construction_defect, detail::concat("no column-disjoint mixed pieces for (n,k)=(", n, ",", k, ")"));
    }
    for (const auto& per_row : *picked) {
      std::vector<Value> elems;
      for (int row = 0; row < 3; ++row) {
        for (std::size_t i : per_row[row]) detail::append_pair(elems, pairs[row][i]);
      }
      blocks.emplace_back(std::move(elems));
    }
  }
  // Every row's leftover pairs, k/2 at a time in ascending order.
  std::vector<Block> whole;
  for (int row = 0; row < 3; ++row) {
    std::vector<Value> elems;
    for (std::size_t i = 0; i < pairs[row].size(); ++i) {
      if (taken[row][i]) continue;
      detail::append_pair(elems, pairs[row][i]);
      if (static_cast<int>(elems.size()) == k) {
        whole.emplace_back(std::move(elems));
        elems.clear();
      }
    }
    if (!elems.empty()) detail::fail(ErrorCode::construction_defect, "row leftovers do not split into k-blocks");
  }
  whole.insert(whole.end(), blocks.begin(), blocks.end());

  if (auto report = verify_block_partition(whole, base, k); !report.passed()) {
    detail::fail(ErrorCode::construction_defect, "even-k partition failed validation: " + report.summary());
  }
  return Partition(std::move(whole), SymbolSet::for_cells(3LL * n));
}

}  // namespace smr
