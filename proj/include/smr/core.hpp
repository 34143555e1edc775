#pragma once

// Core value types for signed magic rectangles: parameters, the symbol set,
// the sparse rectangle, and the block/partition primitives.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smr {

using Value = int;
using Sum = long long;

enum class ErrorCode {
  inadmissible,         // parameters violate the existence conditions
  invalid_argument,     // malformed input to an operation
  precondition,         // input is well formed but breaks a stated precondition
  search_exhausted,     // a bounded search ran out of budget
  construction_defect,  // a construction produced output the verifier rejects
  parse,                // text input could not be parsed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace detail

// Shape parameters of an SMR(m,n;k,s) or MR(m,n;k,s).
//
// `k` is the number of filled cells per row and `s` per column. Every
// construction in this library has s = 3; `s` stays general so the verifier
// and the search oracle can handle magic rectangles of other shapes.
struct Params {
  int m = 0;
  int n = 0;
  int k = 0;
  int s = 3;
  int q = 0;    // floor(n / k)
  int r = 0;    // n - k*q
  int ell = 0;  // s*n / k, the row count of the assembled rectangle
  bool admissible = false;

  // Existence conditions: m*k = 3n and 3 <= m, k <= n. Throws
  // ErrorCode::inadmissible naming the violated condition.
  static Params make(int m, int n, int k);

  // Definitional constraints only: positive sizes, m*k = n*s, k <= n, s <= m.
  static Params structural(int m, int n, int k, int s = 3);

  // No checks beyond positivity and overflow; for probing the search oracle
  // with parameters that cannot be realized.
  static Params unchecked(int m, int n, int k, int s = 3);

  // Number of filled cells, m*k.
  int cells() const noexcept { return m * k; }

  friend bool operator==(const Params&, const Params&) = default;
};

// Returns a description of the first violated existence condition.
inline std::optional<std::string> admissibility_violation(int m, int n, int k) {
  using detail::concat;
  if (m <= 0 || n <= 0 || k <= 0) return concat("sizes must be positive (m=", m, ", n=", n, ", k=", k, ")");
  if (static_cast<Sum>(m) * k != 3LL * n) return concat("mk != 3n (", static_cast<Sum>(m) * k, " != ", 3LL * n, ")");
  if (m < 3) return concat("m < 3 (m=", m, ")");
  if (k < 3) return concat("k < 3 (k=", k, ")");
  if (m > n) return concat("m > n (m=", m, ", n=", n, ")");
  if (k > n) return concat("k > n (k=", k, ", n=", n, ")");
  return std::nullopt;
}

inline std::optional<std::string> structural_violation(int m, int n, int k, int s) {
  using detail::concat;
  if (m <= 0 || n <= 0 || k <= 0 || s <= 0) return concat("sizes must be positive");
  if (static_cast<Sum>(m) * k != static_cast<Sum>(n) * s) return concat("mk != ns (", static_cast<Sum>(m) * k, " != ", static_cast<Sum>(n) * s, ")");
  if (k > n) return concat("k > n (k=", k, ", n=", n, ")");
  if (s > m) return concat("s > m (s=", s, ", m=", m, ")");
  return std::nullopt;
}

inline Params Params::unchecked(int m, int n, int k, int s) {
  if (m <= 0 || n <= 0 || k <= 0 || s <= 0) {
    detail::fail(ErrorCode::invalid_argument, "sizes must be positive");
  }
  // Entries are bounded by m*k/2 in absolute value; keep every row or column
  // sum far away from overflow.
  if (static_cast<Sum>(m) * k > (1LL << 24) || static_cast<Sum>(n) * s > (1LL << 24)) {
    detail::fail(ErrorCode::invalid_argument, "parameters too large for exact int arithmetic");
  }
  Params p;
  p.m = m;
  p.n = n;
  p.k = k;
  p.s = s;
  p.q = n / k;
  p.r = n - k * p.q;
  p.ell = static_cast<int>(static_cast<Sum>(s) * n / k);
  p.admissible = s == 3 && !admissibility_violation(m, n, k).has_value();
  return p;
}

inline Params Params::structural(int m, int n, int k, int s) {
  if (auto why = structural_violation(m, n, k, s)) {
    detail::fail(ErrorCode::inadmissible, detail::concat("SMR(", m, ",", n, ";", k, ",", s, ") is impossible: ", *why));
  }
  return unchecked(m, n, k, s);
}

inline Params Params::make(int m, int n, int k) {
  if (auto why = admissibility_violation(m, n, k)) {
    detail::fail(ErrorCode::inadmissible, detail::concat("SMR(", m, ",", n, ";", k, ",3) does not exist: ", *why));
  }
  return unchecked(m, n, k, 3);
}

inline std::ostream& operator<<(std::ostream& os, const Params& p) {
  return os << "(" << p.m << "," << p.n << ";" << p.k << "," << p.s << ")";
}

// The symbol set X of an SMR with m*k filled cells:
// {0, ±1, ..., ±(mk-1)/2} when mk is odd, {±1, ..., ±mk/2} when mk is even.
struct SymbolSet {
  Value lo = 0;
  Value hi = 0;
  bool contains_zero = false;

  static SymbolSet for_cells(Sum cells) {
    SymbolSet x;
    if (cells % 2 == 1) {
      x.hi = static_cast<Value>((cells - 1) / 2);
      x.contains_zero = true;
    } else {
      x.hi = static_cast<Value>(cells / 2);
      x.contains_zero = false;
    }
    x.lo = -x.hi;
    return x;
  }

  bool contains(Value v) const noexcept { return v >= lo && v <= hi && (v != 0 || contains_zero); }
  Sum size() const noexcept { return static_cast<Sum>(hi - lo) + (contains_zero ? 1 : 0); }

  // Offset of v inside [lo, hi]; usable as a dense index (slot 0 unused when
  // zero is absent).
  std::size_t slot(Value v) const noexcept { return static_cast<std::size_t>(v - lo); }
  std::size_t slots() const noexcept { return static_cast<std::size_t>(hi - lo) + 1; }

  std::vector<Value> values() const {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Value v = lo; v <= hi; ++v) {
      if (contains(v)) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const SymbolSet&, const SymbolSet&) = default;
};

inline SymbolSet symbol_set(const Params& p) { return SymbolSet::for_cells(static_cast<Sum>(p.m) * p.k); }

struct Cell {
  int row = 0;
  int col = 0;
  Value value = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Cell& c) {
  return os << "(" << c.row << "," << c.col << ")=" << c.value;
}

// An m x n grid in which only the filled cells are stored, sorted by
// (row, col). Indices are 0-based.
class SparseRectangle {
 public:
  SparseRectangle() = default;

  // Throws ErrorCode::invalid_argument on out-of-range or repeated positions.
  SparseRectangle(int rows, int cols, std::vector<Cell> cells) : rows_(rows), cols_(cols), cells_(std::move(cells)) {
    if (rows < 0 || cols < 0) detail::fail(ErrorCode::invalid_argument, "negative rectangle dimensions");
    std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
      return std::pair(a.row, a.col) < std::pair(b.row, b.col);
    });
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const Cell& c = cells_[i];
      if (c.row < 0 || c.row >= rows_ || c.col < 0 || c.col >= cols_) {
        detail::fail(ErrorCode::invalid_argument, detail::concat("cell ", c, " outside ", rows_, "x", cols_));
      }
      if (i > 0 && cells_[i - 1].row == c.row && cells_[i - 1].col == c.col) {
        detail::fail(ErrorCode::invalid_argument, detail::concat("cell (", c.row, ",", c.col, ") filled twice"));
      }
    }
  }

  // Rows of optional entries; every row must have the same length.
  static SparseRectangle from_grid(const std::vector<std::vector<std::optional<Value>>>& grid) {
    const int rows = static_cast<int>(grid.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(grid.front().size());
    std::vector<Cell> cells;
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(grid[r].size()) != cols) detail::fail(ErrorCode::invalid_argument, "ragged grid");
      for (int c = 0; c < cols; ++c) {
        if (grid[r][c]) cells.push_back({r, c, *grid[r][c]});
      }
    }
    return SparseRectangle(rows, cols, std::move(cells));
  }

  static SparseRectangle from_dense(const std::vector<std::vector<Value>>& grid) {
    std::vector<std::vector<std::optional<Value>>> g;
    g.reserve(grid.size());
    for (const auto& row : grid) g.emplace_back(row.begin(), row.end());
    return from_grid(g);
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::size_t filled() const noexcept { return cells_.size(); }

  std::span<const Cell> row(int r) const noexcept {
    auto lo = std::lower_bound(cells_.begin(), cells_.end(), r, [](const Cell& c, int key) { return c.row < key; });
    auto hi = std::lower_bound(lo, cells_.end(), r + 1, [](const Cell& c, int key) { return c.row < key; });
    return {lo, hi};
  }

  std::vector<Cell> column(int c) const {
    std::vector<Cell> out;
    for (const Cell& cell : cells_) {
      if (cell.col == c) out.push_back(cell);
    }
    return out;
  }

  std::optional<Value> at(int r, int c) const noexcept {
    for (const Cell& cell : row(r)) {
      if (cell.col == c) return cell.value;
    }
    return std::nullopt;
  }

  std::vector<std::vector<std::optional<Value>>> to_grid() const {
    std::vector<std::vector<std::optional<Value>>> g(rows_, std::vector<std::optional<Value>>(cols_));
    for (const Cell& c : cells_) g[c.row][c.col] = c.value;
    return g;
  }

  friend bool operator==(const SparseRectangle&, const SparseRectangle&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cell> cells_;
};

// A finite set of integers, stored sorted ascending.
class Block {
 public:
  Block() = default;
  Block(std::initializer_list<Value> values) : Block(std::vector<Value>(values)) {}
  explicit Block(std::vector<Value> values) : elements_(std::move(values)) {
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
      detail::fail(ErrorCode::invalid_argument, "block has a repeated element");
    }
  }

  std::span<const Value> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(Value v) const noexcept { return std::binary_search(elements_.begin(), elements_.end(), v); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  Sum sum() const noexcept {
    Sum total = 0;
    for (Value v : elements_) total += v;
    return total;
  }

  Block negated() const {
    std::vector<Value> out;
    out.reserve(elements_.size());
    for (Value v : elements_) out.push_back(-v);
    return Block(std::move(out));
  }

  // True when x in the block implies -x in the block.
  bool negation_closed() const noexcept {
    return std::all_of(elements_.begin(), elements_.end(), [this](Value v) { return contains(-v); });
  }

  friend auto operator<=>(const Block&, const Block&) = default;
  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<Value> elements_;
};

inline std::ostream& operator<<(std::ostream& os, const Block& b) {
  os << "{";
  bool first = true;
  for (Value v : b) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  return os << "}";
}

inline Block block_union(std::span<const Block> parts) {
  std::vector<Value> all;
  for (const Block& b : parts) all.insert(all.end(), b.begin(), b.end());
  return Block(std::move(all));
}

// Pairwise-disjoint blocks whose union is the ground set.
class Partition {
 public:
  Partition() = default;

  // Throws ErrorCode::invalid_argument unless the blocks partition `ground`.
  Partition(std::vector<Block> blocks, std::vector<Value> ground) : blocks_(std::move(blocks)), ground_(std::move(ground)) {
    std::sort(ground_.begin(), ground_.end());
    if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end()) {
      detail::fail(ErrorCode::invalid_argument, "ground set has a repeated element");
    }
    std::vector<Value> all;
    for (const Block& b : blocks_) all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    if (auto dup = std::adjacent_find(all.begin(), all.end()); dup != all.end()) {
      detail::fail(ErrorCode::invalid_argument, detail::concat("blocks overlap at ", *dup));
    }
    if (all != ground_) detail::fail(ErrorCode::invalid_argument, "blocks do not cover the ground set exactly");
  }

  // Partition of the symbol set of `params`.
  Partition(std::vector<Block> blocks, const SymbolSet& x) : Partition(std::move(blocks), x.values()) {}

  std::span<const Block> blocks() const noexcept { return blocks_; }
  std::span<const Value> ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Block> blocks_;
  std::vector<Value> ground_;
};

// Entry sets of the three rows of the base SMR(3,n).
struct RowSets {
  Block r1;
  Block r2;
  Block r3;

  const Block& operator[](int i) const { return i == 0 ? r1 : (i == 1 ? r2 : r3); }

  // 0, 1 or 2 for the row containing v; -1 when v is in none of them.
  int row_of(Value v) const noexcept {
    if (r1.contains(v)) return 0;
    if (r2.contains(v)) return 1;
    if (r3.contains(v)) return 2;
    return -1;
  }

  friend bool operator==(const RowSets&, const RowSets&) = default;
};

// One block per column holding that column's filled values.
inline Partition column_partition(const SparseRectangle& rect) {
  std::vector<std::vector<Value>> cols(static_cast<std::size_t>(rect.cols()));
  std::vector<Value> ground;
  for (const Cell& c : rect.cells()) {
    cols[c.col].push_back(c.value);
    ground.push_back(c.value);
  }
  std::vector<Block> blocks;
  blocks.reserve(cols.size());
  for (auto& col : cols) {
    try {
      blocks.emplace_back(std::move(col));
    } catch (const Error&) {
      detail::fail(ErrorCode::invalid_argument, "rectangle repeats an entry within a column");
    }
  }
  std::sort(ground.begin(), ground.end());
  if (auto dup = std::adjacent_find(ground.begin(), ground.end()); dup != ground.end()) {
    detail::fail(ErrorCode::invalid_argument, detail::concat("rectangle repeats entry ", *dup));
  }
  return Partition(std::move(blocks), std::move(ground));
}

// Map from each entry of `rect` to its column.
inline std::map<Value, int> column_index(const SparseRectangle& rect) {
  std::map<Value, int> out;
  for (const Cell& c : rect.cells()) out.emplace(c.value, c.col);
  return out;
}

}  // namespace smr
