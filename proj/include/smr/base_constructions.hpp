#pragma once

// Closed-form and tabulated building blocks: the fully filled SMR(3,n) for
// even n, its row sets, the MR -> SMR shift, the fixed SMR(4,12;9,3), and the
// small-case triple tables used by the odd-k partitions.

#include <array>
#include <utility>
#include <vector>

#include "smr/core.hpp"
#include "smr/verifier.hpp"

namespace smr {

namespace detail {

inline SparseRectangle smr3_from_rows(const std::vector<std::vector<Value>>& rows) { return SparseRectangle::from_dense(rows); }

// Entry (row, j) of the closed-form SMR(3,n), with 1-based column j and
// n = 2h. Valid for every even n >= 2.
inline Value smr3_entry(int row, int j, int h) {
  const int p = (j + 1) / 2;  // ceil(j / 2)
  const int residue = j % 4;
  Value first = 0;
  switch (residue) {
    case 0: first = -(3 * p - 2) / 2; break;
    case 1: first = (3 * p - 1) / 2; break;
    case 2: first = -(3 * p - 1) / 2; break;
    default: first = (3 * p - 2) / 2; break;
  }
  Value third = 0;
  if (j == 1) {
    third = -3 * h;
  } else if (j == 2 * h) {
    third = 3 * h;
  } else if (residue == 0 || residue == 2) {
    third = -3 * (h - p);
  } else {
    third = 3 * (h - p + 1);
  }
  if (row == 0) return first;
  if (row == 2) return third;
  return -(first + third);
}

}  // namespace detail

// The fully filled SMR(3,n) for even n >= 2. Each row is closed under
// negation and its entries form row_sets(n).
inline SparseRectangle smr3_even(int n) {
  if (n < 2 || n % 2 != 0) detail::fail(ErrorCode::invalid_argument, detail::concat("smr3_even needs even n >= 2, got ", n));
  if (n == 2) return detail::smr3_from_rows({{1, -1}, {2, -2}, {-3, 3}});
  if (n == 4) return detail::smr3_from_rows({{1, -1, 2, -2}, {5, 4, -5, -4}, {-6, -3, 3, 6}});
  const int h = n / 2;
  std::vector<std::vector<Value>> rows(3, std::vector<Value>(static_cast<std::size_t>(n)));
  for (int j = 1; j <= n; ++j) {
    for (int row = 0; row < 3; ++row) rows[row][j - 1] = detail::smr3_entry(row, j, h);
  }
  return detail::smr3_from_rows(rows);
}

// Row entry sets of smr3_even(n), computed from their closed forms rather
// than read off the array.
inline RowSets row_sets(int n) {
  if (n < 2 || n % 2 != 0) detail::fail(ErrorCode::invalid_argument, detail::concat("row_sets needs even n >= 2, got ", n));
  std::vector<Value> r1, r2, r3;
  const auto add_pm = [](std::vector<Value>& out, Value v) {
    out.push_back(v);
    out.push_back(-v);
  };
  // i ranges are inclusive; an empty range when hi < lo.
  const auto add_range = [&](std::vector<Value>& out, int offset, int lo, int hi) {
    for (int i = lo; i <= hi; ++i) add_pm(out, 3 * i + offset);
  };
  if (n % 4 == 0) {
    add_range(r1, 1, 0, (n - 4) / 4);
    add_range(r1, 2, 0, (n - 4) / 4);
    add_range(r2, 1, n / 4, (n - 2) / 2);
    add_range(r2, 2, n / 4, (n - 2) / 2);
  } else {
    add_range(r1, 1, 0, (n - 2) / 4);
    if (n >= 6) add_range(r1, 2, 0, (n - 6) / 4);
    add_range(r2, 1, (n + 2) / 4, (n - 2) / 2);
    add_range(r2, 2, (n - 2) / 4, (n - 2) / 2);
  }
  for (int i = 1; i <= n / 2; ++i) add_pm(r3, 3 * i);
  return RowSets{Block(std::move(r1)), Block(std::move(r2)), Block(std::move(r3))};
}

// Shifts every entry of an MR(m,n;k,s) with mk odd down by (mk-1)/2,
// producing an SMR(m,n;k,s) on the same cells.
inline SparseRectangle mr_to_smr(const SparseRectangle& mr, const Params& p) {
  if (p.cells() % 2 == 0) {
    detail::fail(ErrorCode::precondition, detail::concat("shift needs mk odd, got mk=", p.cells()));
  }
  if (auto report = verify_mr(mr, p); !report.passed()) {
    detail::fail(ErrorCode::precondition, "input is not a magic rectangle: " + report.summary());
  }
  const Value shift = (p.cells() - 1) / 2;
  std::vector<Cell> cells(mr.cells().begin(), mr.cells().end());
  for (Cell& c : cells) c.value -= shift;
  return SparseRectangle(mr.rows(), mr.cols(), std::move(cells));
}

// The SMR(4,12;9,3) that the odd-k partition construction does not cover.
inline SparseRectangle fixed_smr_4_12() {
  using E = std::optional<Value>;
  const E _ = std::nullopt;
  return SparseRectangle::from_grid({
      {1, 16, -17, -12, 12, _, _, -6, 6, -3, 3, _},
      {17, -1, _, _, -16, 13, 5, -5, -13, _, 8, -8},
      {_, _, 2, -2, 4, -9, 9, _, 7, 10, -11, -10},
      {-18, -15, 15, 14, _, -4, -14, 11, _, -7, _, 18},
  });
}

namespace detail {

using Triple = std::array<Value, 3>;

struct SmallCase {
  int n;
  int k;
  std::vector<Triple> m;  // S1 representatives; negations are implied
  std::vector<Triple> nn; // S2 representatives
};

inline const std::vector<SmallCase>& small_case_table() {
  static const std::vector<SmallCase> table = {
      {10, 5, {{1, 13, -14}}, {{4, 7, -11}}},
      {12, 9, {{1, 16, -17}}, {{4, 7, -11}}},
      {14, 7, {{1, 19, -20}}, {{4, 10, -14}}},
      {18, 9, {{1, 25, -26}}, {{4, 13, -17}}},
      {20, 5, {{1, 28, -29}, {2, 23, -25}}, {{4, 13, -17}, {5, 11, -16}}},
      {20, 15, {{1, 28, -29}}, {{4, 13, -17}}},
      {22, 11, {{1, 31, -32}}, {{4, 16, -20}}},
      {24, 9, {{1, 34, -35}, {2, 29, -31}}, {{4, 16, -20}, {5, 14, -19}}},
      {26, 13, {{1, 37, -38}}, {{4, 19, -23}}},
      {28, 7, {{1, 40, -41}, {2, 35, -37}}, {{4, 19, -23}, {5, 17, -22}}},
      {28, 21, {{1, 40, -41}}, {{4, 19, -23}}},
      {30, 5, {{1, 43, -44}, {2, 38, -40}, {4, 31, -35}}, {{7, 22, -29}, {10, 16, -26}, {8, 20, -28}}},
      {30, 9, {{1, 43, -44}, {2, 38, -40}}, {{4, 22, -26}, {5, 20, -25}}},
      {30, 15, {{1, 43, -44}}, {{4, 22, -26}}},
  };
  return table;
}

// Each representative followed by its negation.
inline std::vector<Block> with_negations(const std::vector<Triple>& reps) {
  std::vector<Block> out;
  out.reserve(2 * reps.size());
  for (const Triple& t : reps) {
    Block b({t[0], t[1], t[2]});
    out.push_back(b);
    out.push_back(b.negated());
  }
  return out;
}

}  // namespace detail

inline bool has_small_case_s12(int n, int k) {
  for (const auto& row : detail::small_case_table()) {
    if (row.n == n && row.k == k) return true;
  }
  return false;
}

// Tabulated (S1, S2) for the 14 small (n,k) pairs, each triple followed by
// its negation.
inline std::pair<std::vector<Block>, std::vector<Block>> small_case_s12(int n, int k) {
  for (const auto& row : detail::small_case_table()) {
    if (row.n == n && row.k == k) return {detail::with_negations(row.m), detail::with_negations(row.nn)};
  }
  detail::fail(ErrorCode::invalid_argument, detail::concat("(n,k)=(", n, ",", k, ") is not a tabulated small case"));
}

inline bool has_special_s3(int n, int k) {
  if (n == 2 * k) return true;
  const std::array<std::pair<int, int>, 8> listed = {{{12, 9}, {20, 15}, {28, 21}, {20, 5}, {24, 9}, {28, 7}, {30, 9}, {30, 5}}};
  return std::find(listed.begin(), listed.end(), std::pair(n, k)) != listed.end();
}

// The S3 families given explicitly for n <= 30.
inline std::vector<Block> special_s3(int n, int k) {
  using detail::Triple;
  const std::pair<int, int> nk{n, k};
  if (n == 2 * k || nk == std::pair(12, 9) || nk == std::pair(20, 15) || nk == std::pair(28, 21)) {
    return detail::with_negations({Triple{3, 6, -9}});
  }
  if (nk == std::pair(20, 5) || nk == std::pair(24, 9) || nk == std::pair(28, 7) || nk == std::pair(30, 9)) {
    return detail::with_negations({Triple{3, 27, -30}, Triple{6, 12, -18}});
  }
  if (nk == std::pair(30, 5)) {
    return detail::with_negations({Triple{3, 42, -45}, Triple{6, 33, -39}, Triple{9, 21, -30}});
  }
  detail::fail(ErrorCode::invalid_argument, detail::concat("(n,k)=(", n, ",", k, ") has no special S3"));
}

}  // namespace smr
