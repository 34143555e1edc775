#pragma once

// Turns a fully filled SMR(m,n) and a partition of its entries into l zero-sum
// k-blocks, near-orthogonal to its columns, into an SMR(l,n;k,m): element d
// of block i goes to row i, in the column where d sits in the base.

#include <algorithm>
#include <vector>

#include "smr/core.hpp"
#include "smr/verifier.hpp"

namespace smr {

inline SparseRectangle assemble(const SparseRectangle& base, const Partition& p2, const Params& params) {
  using detail::concat;
  using detail::fail;
  const int m = base.rows();
  const int n = base.cols();
  if (base.filled() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n)) {
    fail(ErrorCode::precondition, concat("base is not fully filled (", base.filled(), " of ", m * n, " cells)"));
  }
  if (auto report = verify_smr(base, Params::unchecked(m, n, n, m)); !report.passed()) {
    fail(ErrorCode::precondition, "base is not a signed magic rectangle: " + report.summary());
  }
  if (params.n != n || params.s != m || params.m != static_cast<int>(p2.size())) {
    fail(ErrorCode::precondition, concat("target ", params, " does not match a ", m, "x", n, " base and ", p2.size(), " blocks"));
  }
  const Partition columns = column_partition(base);
  if (!std::ranges::equal(columns.ground(), p2.ground())) fail(ErrorCode::precondition, "blocks do not partition the base's entries");
  for (std::size_t i = 0; i < p2.size(); ++i) {
    if (static_cast<int>(p2[i].size()) != params.k) {
      fail(ErrorCode::precondition, concat("block ", i, " has ", p2[i].size(), " elements, expected ", params.k));
    }
    if (p2[i].sum() != 0) fail(ErrorCode::precondition, concat("block ", i, " sums to ", p2[i].sum()));
  }
  if (!is_near_orthogonal(columns, p2)) fail(ErrorCode::precondition, "two elements of one block share a base column");

  const auto col = column_index(base);
  std::vector<Cell> cells;
  cells.reserve(columns.ground().size());
  for (std::size_t i = 0; i < p2.size(); ++i) {
    for (Value d : p2[i]) cells.push_back({static_cast<int>(i), col.at(d), d});
  }
  SparseRectangle out(params.m, n, std::move(cells));
  if (auto report = verify_smr(out, params); !report.passed()) {
    fail(ErrorCode::construction_defect, "assembled array failed verification: " + report.summary());
  }
  return out;
}

}  // namespace smr
