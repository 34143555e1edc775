#pragma once

// Backtracking search for small signed magic rectangles, magic rectangles and
// families of zero-sum blocks. Used as an independent test oracle and as the
// producer for shapes that have no closed-form construction here.
//
// Searches are deterministic: the node order depends only on the inputs. A
// "none exists" answer is returned only after the whole tree was explored;
// running out of budget is always reported as `exhausted`.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "smr/core.hpp"
#include "smr/verifier.hpp"

namespace smr {

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t max_millis = 60'000;
};

enum class SearchStatus { found, exhausted, none_exists };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "budget exhausted";
    case SearchStatus::none_exists: return "search space exhausted, none exists";
  }
  return "?";
}

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<SparseRectangle> rect;
  std::uint64_t nodes = 0;
};

// Filled columns of each row, each list sorted ascending.
using Pattern = std::vector<std::vector<int>>;

// Row i fills columns floor(i*n/m) + t (mod n) for t < k. When mk = ns every
// column receives exactly s cells, so this is always a valid pattern for an
// SMR(m,n;k,s). For m = n it is the cyclic three-diagonal pattern, for m = s
// the full array.
inline std::optional<Pattern> band_pattern(int m, int n, int k, int s) {
  if (static_cast<Sum>(m) * k != static_cast<Sum>(n) * s || k > n) return std::nullopt;
  Pattern pattern(static_cast<std::size_t>(m));
  std::vector<int> load(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < m; ++i) {
    const int start = static_cast<int>(static_cast<Sum>(i) * n / m);
    for (int t = 0; t < k; ++t) {
      const int c = (start + t) % n;
      pattern[i].push_back(c);
      ++load[c];
    }
    std::sort(pattern[i].begin(), pattern[i].end());
  }
  if (std::any_of(load.begin(), load.end(), [s](int x) { return x != s; })) return std::nullopt;
  return pattern;
}

namespace detail {

class SearchClock {
 public:
  explicit SearchClock(const SearchBudget& b)
      : max_nodes_(b.max_nodes), deadline_(std::chrono::steady_clock::now() + std::chrono::milliseconds(b.max_millis)) {}

  // Counts one node; false once the budget is spent.
  bool tick() {
    if (out_) return false;
    if (++nodes_ > max_nodes_) return !(out_ = true);
    if ((nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) return !(out_ = true);
    return true;
  }

  bool out() const noexcept { return out_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t max_nodes_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool out_ = false;
};

// Assigns distinct values from a fixed pool to the cells of a fixed pattern so
// that every row sums to row_target and every column to col_target.
class ValueSearch {
 public:
  // Returns true to stop the search after a solution.
  using Visitor = std::function<bool(const std::vector<Cell>&)>;

  ValueSearch(int rows, int cols, const Pattern& pattern, std::vector<Value> values, Sum row_target, Sum col_target, bool break_symmetry,
              SearchClock& clock)
      : rows_(rows), cols_(cols), vals_(std::move(values)), row_target_(row_target), col_target_(col_target), clock_(clock) {
    std::sort(vals_.begin(), vals_.end());
    for (int r = 0; r < rows_; ++r) {
      for (int c : pattern[r]) {
        cell_row_.push_back(r);
        cell_col_.push_back(c);
      }
    }
    row_cells_.assign(rows_, {});
    col_cells_.assign(cols_, {});
    for (std::size_t id = 0; id < cell_row_.size(); ++id) {
      row_cells_[cell_row_[id]].push_back(id);
      col_cells_[cell_col_[id]].push_back(id);
    }
    row_left_.resize(rows_);
    col_left_.resize(cols_);
    for (int r = 0; r < rows_; ++r) row_left_[r] = static_cast<int>(row_cells_[r].size());
    for (int c = 0; c < cols_; ++c) col_left_[c] = static_cast<int>(col_cells_[c].size());
    row_sum_.assign(rows_, 0);
    col_sum_.assign(cols_, 0);
    assigned_.assign(cell_row_.size(), -1);
    used_.assign(vals_.size(), false);
    if (!vals_.empty()) {
      lo_ = vals_.front();
      index_.assign(static_cast<std::size_t>(vals_.back() - lo_) + 1, -1);
      for (std::size_t i = 0; i < vals_.size(); ++i) index_[vals_[i] - lo_] = static_cast<int>(i);
    }
    // Branch on values nearest the centre first, larger before smaller.
    const Sum centre2 = vals_.empty() ? 0 : static_cast<Sum>(vals_.front()) + vals_.back();
    order_.resize(vals_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      const Sum da = std::abs(2 * static_cast<Sum>(vals_[a]) - centre2), db = std::abs(2 * static_cast<Sum>(vals_[b]) - centre2);
      return da != db ? da < db : vals_[a] > vals_[b];
    });
    // Reflection v -> lo+hi-v maps solutions to solutions when the pool is
    // symmetric and the targets sit at the centre; fix the first free choice
    // to the upper half.
    symmetric_ = break_symmetry && pool_is_symmetric() && 2 * row_target_ == centre2 * line_len(row_cells_) &&
                 2 * col_target_ == centre2 * line_len(col_cells_);
    centre2_ = centre2;
  }

  // Explores the tree; returns true if the visitor asked to stop.
  bool run(const Visitor& visit) {
    if (cell_row_.size() != vals_.size()) return false;
    return dfs(0, visit);
  }

 private:
  bool pool_is_symmetric() const {
    for (std::size_t i = 0; i < vals_.size(); ++i) {
      if (static_cast<Sum>(vals_[i]) + vals_[vals_.size() - 1 - i] != static_cast<Sum>(vals_.front()) + vals_.back()) return false;
    }
    return true;
  }

  // Common line length, or -1 when lines differ in length.
  static Sum line_len(const std::vector<std::vector<std::size_t>>& lines) {
    if (lines.empty()) return 0;
    const Sum len = static_cast<Sum>(lines.front().size());
    for (const auto& l : lines) {
      if (static_cast<Sum>(l.size()) != len) return -1;
    }
    return len;
  }

  int index_of(Sum v) const {
    if (vals_.empty() || v < lo_ || v > vals_.back()) return -1;
    return index_[static_cast<std::size_t>(v - lo_)];
  }

  // Whether `left` unused values can still sum to `need`.
  bool line_feasible(int left, Sum need) const {
    if (left == 0) return need == 0;
    if (left == 1) {
      const int idx = index_of(need);
      return idx >= 0 && !used_[idx];
    }
    Sum lo_sum = 0, hi_sum = 0;
    int taken = 0;
    for (std::size_t i = 0; i < vals_.size() && taken < left; ++i) {
      if (!used_[i]) {
        lo_sum += vals_[i];
        ++taken;
      }
    }
    if (taken < left) return false;
    taken = 0;
    for (std::size_t i = vals_.size(); i-- > 0 && taken < left;) {
      if (!used_[i]) {
        hi_sum += vals_[i];
        ++taken;
      }
    }
    if (need < lo_sum || need > hi_sum) return false;
    if (left == 2) {
      for (std::size_t i = 0; i < vals_.size(); ++i) {
        if (used_[i]) continue;
        const Sum other = need - vals_[i];
        if (other <= vals_[i]) break;
        const int j = index_of(other);
        if (j >= 0 && !used_[j]) return true;
      }
      return false;
    }
    return true;
  }

  std::size_t pick_cell() const {
    std::size_t best = cell_row_.size();
    std::pair<int, int> best_key{1 << 30, 1 << 30};
    for (std::size_t id = 0; id < cell_row_.size(); ++id) {
      if (assigned_[id] >= 0) continue;
      const int a = row_left_[cell_row_[id]], b = col_left_[cell_col_[id]];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      if (key < best_key) {
        best_key = key;
        best = id;
      }
    }
    return best;
  }

  void place(std::size_t id, int idx) {
    assigned_[id] = idx;
    used_[idx] = true;
    --row_left_[cell_row_[id]];
    --col_left_[cell_col_[id]];
    row_sum_[cell_row_[id]] += vals_[idx];
    col_sum_[cell_col_[id]] += vals_[idx];
  }

  void unplace(std::size_t id) {
    const int idx = assigned_[id];
    assigned_[id] = -1;
    used_[idx] = false;
    ++row_left_[cell_row_[id]];
    ++col_left_[cell_col_[id]];
    row_sum_[cell_row_[id]] -= vals_[idx];
    col_sum_[cell_col_[id]] -= vals_[idx];
  }

  bool try_value(std::size_t id, int idx, std::size_t depth, const Visitor& visit) {
    if (!clock_.tick()) return true;
    place(id, idx);
    const int r = cell_row_[id], c = cell_col_[id];
    bool stop = false;
    if (line_feasible(row_left_[r], row_target_ - row_sum_[r]) && line_feasible(col_left_[c], col_target_ - col_sum_[c])) {
      stop = dfs(depth + 1, visit);
    }
    unplace(id);
    return stop;
  }

  bool dfs(std::size_t depth, const Visitor& visit) {
    if (depth == cell_row_.size()) {
      std::vector<Cell> cells;
      cells.reserve(cell_row_.size());
      for (std::size_t id = 0; id < cell_row_.size(); ++id) cells.push_back({cell_row_[id], cell_col_[id], vals_[assigned_[id]]});
      return visit(cells);
    }
    const std::size_t id = pick_cell();
    const int r = cell_row_[id], c = cell_col_[id];
    std::optional<Sum> forced;
    if (row_left_[r] == 1) forced = row_target_ - row_sum_[r];
    if (col_left_[c] == 1) {
      const Sum v = col_target_ - col_sum_[c];
      if (forced && *forced != v) return false;
      forced = v;
    }
    if (forced) {
      const int idx = index_of(*forced);
      if (idx < 0 || used_[idx]) return false;
      return try_value(id, idx, depth, visit);
    }
    const bool restrict_half = symmetric_ && depth == 0;
    for (int idx : order_) {
      if (used_[idx]) continue;
      if (restrict_half && 2 * static_cast<Sum>(vals_[idx]) < centre2_) continue;
      if (try_value(id, idx, depth, visit)) return true;
    }
    return false;
  }

  int rows_, cols_;
  std::vector<Value> vals_;
  Sum row_target_, col_target_;
  SearchClock& clock_;
  std::vector<int> cell_row_, cell_col_;
  std::vector<std::vector<std::size_t>> row_cells_, col_cells_;
  std::vector<int> row_left_, col_left_;
  std::vector<Sum> row_sum_, col_sum_;
  std::vector<int> assigned_;
  std::vector<bool> used_;
  Value lo_ = 0;
  std::vector<int> index_;
  std::vector<int> order_;
  bool symmetric_ = false;
  Sum centre2_ = 0;
};

// Enumerates every pattern with k cells per row and s per column. With
// `rows_sorted`, only patterns whose rows are in lexicographically
// non-decreasing order are produced (one per row permutation class).
// The visitor returns true to stop.
inline bool enumerate_patterns(int m, int n, int k, int s, bool rows_sorted, SearchClock& clock,
                               const std::function<bool(const Pattern&)>& visit) {
  if (static_cast<Sum>(m) * k != static_cast<Sum>(n) * s || k > n || s > m) return false;
  Pattern pattern(static_cast<std::size_t>(m));
  std::vector<int> cap(static_cast<std::size_t>(n), s);
  std::vector<int> chosen;
  std::function<bool(int)> row_step;
  std::function<bool(int, int)> col_step = [&](int row, int from) -> bool {
    if (static_cast<int>(chosen.size()) == k) {
      if (rows_sorted && row > 0 && chosen < pattern[row - 1]) return false;
      const int rows_after = m - row - 1;
      for (int c = 0; c < n; ++c) {
        if (cap[c] > rows_after) return false;
      }
      pattern[row] = chosen;
      return row_step(row + 1);
    }
    const int need = k - static_cast<int>(chosen.size());
    for (int c = from; c <= n - need; ++c) {
      if (cap[c] == 0) continue;
      if (!clock.tick()) return true;
      --cap[c];
      chosen.push_back(c);
      const bool stop = col_step(row, c + 1);
      chosen.pop_back();
      ++cap[c];
      if (stop) return true;
    }
    return false;
  };
  row_step = [&](int row) -> bool {
    if (row == m) return visit(pattern);
    std::vector<int> saved;
    saved.swap(chosen);
    const bool stop = col_step(row, 0);
    chosen.swap(saved);
    return stop;
  };
  return row_step(0);
}

inline Pattern sorted_rows(Pattern p) {
  std::sort(p.begin(), p.end());
  return p;
}

// Complete search for fully filled three-row arrays. Columns are chosen as
// value triples with the target sum, each new triple holding the smallest
// unused value, so every set partition of the pool is met once. Each complete
// partition is then oriented: a memoised search assigns every triple's values
// to the three rows so that the row targets are met.
class FullThreeRowSearch {
 public:
  using Visitor = std::function<bool(const std::vector<Cell>&)>;

  FullThreeRowSearch(int cols, std::vector<Value> values, Sum row_target, Sum col_target, SearchClock& clock)
      : n_(cols), values_(std::move(values)), row_target_(row_target), col_target_(col_target), clock_(clock) {
    std::sort(values_.begin(), values_.end());
    used_.assign(values_.size(), false);
  }

  // Returns true if the visitor accepted a solution.
  bool run(const Visitor& visit) {
    if (values_.size() != static_cast<std::size_t>(3 * n_)) return false;
    visit_ = &visit;
    return pick(0);
  }

 private:
  using Triple = std::array<Value, 3>;

  bool pick(int made) {
    if (made == n_) return orient();
    std::size_t a = 0;
    while (used_[a]) ++a;
    used_[a] = true;
    for (std::size_t b = a + 1; b < values_.size(); ++b) {
      if (used_[b]) continue;
      const Sum rest = col_target_ - values_[a] - values_[b];
      if (rest <= values_[b]) break;
      const auto it = std::lower_bound(values_.begin() + static_cast<std::ptrdiff_t>(b) + 1, values_.end(), rest);
      if (it == values_.end() || *it != rest) continue;
      const auto c = static_cast<std::size_t>(it - values_.begin());
      if (used_[c]) continue;
      if (!clock_.tick()) break;
      used_[b] = used_[c] = true;
      triples_.push_back({values_[a], values_[b], values_[c]});
      const bool stop = pick(made + 1);
      triples_.pop_back();
      used_[b] = used_[c] = false;
      if (stop) {
        used_[a] = false;
        return true;
      }
    }
    used_[a] = false;
    return false;
  }

  bool orient() {
    // Rows are interchangeable, so the first triple keeps its sorted order.
    suffix_lo_.assign(static_cast<std::size_t>(n_) + 1, 0);
    suffix_hi_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int i = n_ - 1; i >= 0; --i) {
      suffix_lo_[i] = suffix_lo_[i + 1] + triples_[i][0];
      suffix_hi_[i] = suffix_hi_[i + 1] + triples_[i][2];
    }
    failed_.clear();
    chosen_.assign(static_cast<std::size_t>(n_), Triple{});
    chosen_[0] = triples_[0];
    if (!place(1, triples_[0][0], triples_[0][1])) return false;
    std::vector<Cell> cells;
    cells.reserve(values_.size());
    for (int row = 0; row < 3; ++row) {
      for (int col = 0; col < n_; ++col) cells.push_back({row, col, chosen_[col][row]});
    }
    return (*visit_)(cells);
  }

  bool place(int idx, Sum s0, Sum s1) {
    const auto feasible = [&](Sum s) { return row_target_ - s >= suffix_lo_[idx] && row_target_ - s <= suffix_hi_[idx]; };
    if (!feasible(s0) || !feasible(s1)) return false;
    if (idx == n_) return s0 == row_target_ && s1 == row_target_;
    const std::uint64_t key = (static_cast<std::uint64_t>(idx) << 48) ^ (static_cast<std::uint64_t>(s0 + (1LL << 23)) << 24) ^
                              static_cast<std::uint64_t>(s1 + (1LL << 23));
    if (failed_.count(key)) return false;
    if (!clock_.tick()) return false;
    Triple t = triples_[idx];
    do {
      chosen_[idx] = t;
      if (place(idx + 1, s0 + t[0], s1 + t[1])) return true;
      if (clock_.out()) return false;
    } while (std::next_permutation(t.begin(), t.end()));
    failed_.insert(key);
    return false;
  }

  int n_;
  std::vector<Value> values_;
  Sum row_target_;
  Sum col_target_;
  SearchClock& clock_;
  const Visitor* visit_ = nullptr;
  std::vector<bool> used_;
  std::vector<Triple> triples_;
  std::vector<Triple> chosen_;
  std::vector<Sum> suffix_lo_;
  std::vector<Sum> suffix_hi_;
  std::unordered_set<std::uint64_t> failed_;
};

// Full three-row shapes go to FullThreeRowSearch. Otherwise runs value
// searches over the band pattern and then, if that pattern has no
// solution, over every other row-sorted pattern.
inline SearchResult search_rectangle(const Params& p, std::vector<Value> values, Sum row_target, Sum col_target, const SearchBudget& budget,
                                     const std::function<bool(const SparseRectangle&)>& accept) {
  SearchClock clock(budget);
  SearchResult result;
  const auto finish = [&](SearchStatus status) {
    result.status = status;
    result.nodes = clock.nodes();
    return result;
  };
  if (static_cast<Sum>(p.m) * p.k != static_cast<Sum>(p.n) * p.s || p.k > p.n || p.s > p.m) return finish(SearchStatus::none_exists);

  const auto on_pattern = [&](const Pattern& pattern) -> bool {
    ValueSearch search(p.m, p.n, pattern, values, row_target, col_target, true, clock);
    return search.run([&](const std::vector<Cell>& cells) {
      SparseRectangle rect(p.m, p.n, cells);
      if (!accept(rect)) return false;
      result.rect = std::move(rect);
      return true;
    });
  };

  if (p.m == 3 && p.s == 3 && p.k == p.n) {
    FullThreeRowSearch search(p.n, values, row_target, col_target, clock);
    search.run([&](const std::vector<Cell>& cells) {
      SparseRectangle rect(p.m, p.n, cells);
      if (!accept(rect)) return false;
      result.rect = std::move(rect);
      return true;
    });
    if (result.rect) return finish(SearchStatus::found);
    return finish(clock.out() ? SearchStatus::exhausted : SearchStatus::none_exists);
  }

  const auto band = band_pattern(p.m, p.n, p.k, p.s);
  if (band) {
    on_pattern(*band);
    if (result.rect) return finish(SearchStatus::found);
    if (clock.out()) return finish(SearchStatus::exhausted);
  }
  const auto band_key = band ? std::optional(sorted_rows(*band)) : std::nullopt;
  enumerate_patterns(p.m, p.n, p.k, p.s, true, clock, [&](const Pattern& pattern) {
    if (band_key && pattern == *band_key) return false;
    return on_pattern(pattern);
  });
  if (result.rect) return finish(SearchStatus::found);
  return finish(clock.out() ? SearchStatus::exhausted : SearchStatus::none_exists);
}

}  // namespace detail

// Finds an SMR with the shape of `p`. The returned array passes verify_smr.
inline SearchResult search_smr(const Params& p, const SearchBudget& budget = {}) {
  const SymbolSet x = symbol_set(p);
  return detail::search_rectangle(p, x.values(), 0, 0, budget, [&](const SparseRectangle& r) { return verify_smr(r, p).passed(); });
}

// Finds an MR(m,n;k,s) over 0..mk-1. Row sums are k(mk-1)/2 and column sums
// s(mk-1)/2; when either is not an integer no MR exists.
inline SearchResult search_mr(const Params& p, const SearchBudget& budget = {}) {
  const Sum cells = p.cells();
  if ((p.k * (cells - 1)) % 2 != 0 || (p.s * (cells - 1)) % 2 != 0) return {SearchStatus::none_exists, std::nullopt, 0};
  std::vector<Value> values(static_cast<std::size_t>(cells));
  std::iota(values.begin(), values.end(), 0);
  return detail::search_rectangle(p, std::move(values), p.k * (cells - 1) / 2, p.s * (cells - 1) / 2, budget,
                                  [&](const SparseRectangle& r) { return verify_mr(r, p).passed(); });
}

// Value search restricted to one pattern.
inline SearchResult search_smr_on_pattern(const Params& p, const Pattern& pattern, const SearchBudget& budget = {}) {
  detail::SearchClock clock(budget);
  SearchResult result;
  detail::ValueSearch search(p.m, p.n, pattern, symbol_set(p).values(), 0, 0, true, clock);
  search.run([&](const std::vector<Cell>& cells) {
    SparseRectangle rect(p.m, p.n, cells);
    if (!verify_smr(rect, p).passed()) return false;
    result.rect = std::move(rect);
    return true;
  });
  result.nodes = clock.nodes();
  result.status = result.rect ? SearchStatus::found : (clock.out() ? SearchStatus::exhausted : SearchStatus::none_exists);
  return result;
}

struct CountResult {
  long long count = 0;
  bool saturated = false;  // count reached the cap; the true count is >= cap
};

// Largest m*n accepted by count_smr.
inline constexpr int kCountCellLimit = 30;

// Counts SMRs of shape `p` with no symmetry reduction, saturating at `cap`.
// Throws ErrorCode::search_exhausted if the budget runs out first.
inline CountResult count_smr(const Params& p, long long cap, const SearchBudget& budget = {}) {
  if (p.m * p.n > kCountCellLimit) {
    detail::fail(ErrorCode::invalid_argument, detail::concat("count_smr is limited to m*n <= ", kCountCellLimit));
  }
  detail::SearchClock clock(budget);
  CountResult out;
  const auto values = symbol_set(p).values();
  detail::enumerate_patterns(p.m, p.n, p.k, p.s, false, clock, [&](const Pattern& pattern) {
    detail::ValueSearch search(p.m, p.n, pattern, values, 0, 0, false, clock);
    return search.run([&](const std::vector<Cell>&) {
      out.saturated = ++out.count >= cap;
      return out.saturated;
    });
  });
  if (clock.out() && !out.saturated) detail::fail(ErrorCode::search_exhausted, "count_smr ran out of budget");
  return out;
}

// Row-membership quota shared by `count` blocks: per_row[i] elements of each
// block must come from row i of the governing RowSets.
struct BlockQuota {
  std::array<int, 3> per_row{};
  int count = 0;
};

struct ZeroSumBlockQuery {
  Block ground;
  int block_size = 3;
  // When non-empty, the elements of each block must lie in distinct columns.
  std::map<Value, int> column_of;
  // Required when `quotas` is non-empty.
  std::optional<RowSets> rows;
  // Groups of blocks with fixed row quotas; when empty, `count` unconstrained
  // blocks are searched.
  std::vector<BlockQuota> quotas;
  int count = 0;
  // Whether the family must be closed under blockwise negation. Blocks are
  // then produced as (B, -B) pairs.
  bool negation_closed = true;
};

struct BlockSearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::vector<Block> blocks;  // grouped by quota, in query order
  std::uint64_t nodes = 0;
};

// Finds pairwise-disjoint zero-sum blocks meeting the query. `accept` may
// reject a complete family to continue the search for another one.
inline BlockSearchResult search_zero_sum_blocks(const ZeroSumBlockQuery& query, const SearchBudget& budget = {},
                                                const std::function<bool(const std::vector<Block>&)>& accept = {}) {
  BlockSearchResult result;
  std::vector<BlockQuota> groups = query.quotas;
  if (groups.empty()) {
    BlockQuota any;
    any.per_row = {-1, -1, -1};
    any.count = query.count;
    groups.push_back(any);
  } else if (!query.rows) {
    detail::fail(ErrorCode::invalid_argument, "row quotas need RowSets");
  }
  const std::vector<Value> ground(query.ground.begin(), query.ground.end());
  const auto row_of = [&](Value v) { return query.rows ? query.rows->row_of(v) : 0; };

  // Counting checks that fail before any search.
  for (const auto& g : groups) {
    if (g.count < 0 || (query.negation_closed && g.count % 2 != 0)) {
      result.status = SearchStatus::none_exists;
      return result;
    }
    if (g.per_row[0] < 0) continue;
    if (g.per_row[0] + g.per_row[1] + g.per_row[2] != query.block_size) {
      result.status = SearchStatus::none_exists;
      return result;
    }
    for (int row = 0; row < 3; ++row) {
      const auto avail = std::count_if(ground.begin(), ground.end(), [&](Value v) { return row_of(v) == row; });
      if (g.per_row[row] > avail) {
        result.status = SearchStatus::none_exists;
        return result;
      }
    }
  }

  detail::SearchClock clock(budget);
  std::map<Value, std::size_t> pos;
  for (std::size_t i = 0; i < ground.size(); ++i) pos.emplace(ground[i], i);
  std::vector<bool> used(ground.size(), false);
  std::vector<Block> family;
  std::vector<Value> current;
  const int size = query.block_size;
  bool found = false;
  // When the blocks must cover the ground set, the smallest unused element
  // starts the next block.
  const bool cover = !query.negation_closed && groups.size() == 1 && groups[0].per_row[0] < 0 &&
                     static_cast<std::size_t>(groups[0].count) * static_cast<std::size_t>(size) == ground.size();

  // Whether `r` more unused elements at index >= from can add up to `need`.
  const auto reachable = [&](std::size_t from, int r, Sum need) {
    Sum lo = 0, hi = 0;
    int got = 0;
    for (std::size_t i = from; i < ground.size() && got < r; ++i) {
      if (!used[i]) {
        lo += ground[i];
        ++got;
      }
    }
    if (got < r) return false;
    got = 0;
    for (std::size_t i = ground.size(); i > from && got < r; --i) {
      if (!used[i - 1]) {
        hi += ground[i - 1];
        ++got;
      }
    }
    return lo <= need && need <= hi;
  };

  const auto column_ok = [&](std::span<const Value> elems) {
    if (query.column_of.empty()) return true;
    std::vector<int> cols;
    for (Value v : elems) {
      auto it = query.column_of.find(v);
      if (it == query.column_of.end()) return false;
      cols.push_back(it->second);
    }
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
  };

  // Blocks are built with ascending ground indices; within a quota group
  // each block's first element is larger than the previous block's.
  std::function<bool(std::size_t, int, std::size_t)> build_block;
  std::function<bool(std::size_t, int)> next_block = [&](std::size_t group, int made) -> bool {
    if (group == groups.size()) {
      if (!accept || accept(family)) {
        result.blocks = family;
        found = true;
        return true;
      }
      return false;
    }
    const int target = query.negation_closed ? groups[group].count / 2 : groups[group].count;
    if (made == target) return next_block(group + 1, 0);
    std::size_t from = 0;
    if (made > 0) {
      const Block& prev = family[family.size() - (query.negation_closed ? 2 : 1)];
      from = pos.at(*prev.begin()) + 1;
    }
    current.clear();
    return build_block(group, made, from);
  };

  build_block = [&](std::size_t group, int made, std::size_t from) -> bool {
    const auto& quota = groups[group].per_row;
    const int placed = static_cast<int>(current.size());
    std::array<int, 3> have{};
    for (Value v : current) {
      const int row = row_of(v);
      if (row >= 0) ++have[row];
    }
    const auto fits = [&](Value v) {
      if (quota[0] < 0) return true;
      const int row = row_of(v);
      return row >= 0 && have[row] < quota[row];
    };
    if (placed == size - 1) {
      Sum need = 0;
      for (Value v : current) need -= v;
      auto it = pos.find(static_cast<Value>(need));
      if (it == pos.end() || it->second < from || used[it->second] || !fits(ground[it->second])) return false;
      if (!clock.tick()) return true;
      current.push_back(ground[it->second]);
      bool stop = false;
      Block block(current);
      if (column_ok(block.elements())) {
        std::vector<std::size_t> taken;
        bool ok = true;
        for (Value v : block) taken.push_back(pos.at(v));
        std::optional<Block> neg;
        if (query.negation_closed) {
          neg = block.negated();
          for (Value v : *neg) {
            auto jt = pos.find(v);
            if (jt == pos.end() || used[jt->second] || block.contains(v)) {
              ok = false;
              break;
            }
            taken.push_back(jt->second);
          }
          if (ok && query.rows && quota[0] >= 0) {
            std::array<int, 3> neg_have{};
            for (Value v : *neg) {
              const int row = row_of(v);
              if (row >= 0) ++neg_have[row];
            }
            ok = neg_have == quota;
          }
          ok = ok && column_ok(neg->elements());
        }
        if (ok) {
          for (std::size_t t : taken) used[t] = true;
          family.push_back(block);
          if (neg) family.push_back(*neg);
          const std::vector<Value> saved = current;
          stop = next_block(group, made + 1);
          current = saved;
          family.pop_back();
          if (neg) family.pop_back();
          for (std::size_t t : taken) used[t] = false;
        }
      }
      current.pop_back();
      return stop;
    }
    Sum partial = 0;
    for (Value v : current) partial += v;
    for (std::size_t i = from; i < ground.size(); ++i) {
      if (used[i] || !fits(ground[i])) continue;
      if (placed == 0 && query.negation_closed && ground[i] == 0) continue;
      if (!clock.tick()) return true;
      current.push_back(ground[i]);
      used[i] = true;
      bool stop = false;
      if (reachable(i + 1, size - placed - 1, -(partial + ground[i]))) stop = build_block(group, made, i + 1);
      used[i] = false;
      current.pop_back();
      if (stop) return true;
      if (placed == 0 && cover) break;
    }
    return false;
  };

  next_block(0, 0);
  result.nodes = clock.nodes();
  if (found) {
    result.status = SearchStatus::found;
  } else {
    result.blocks.clear();
    result.status = clock.out() ? SearchStatus::exhausted : SearchStatus::none_exists;
  }
  return result;
}

}  // namespace smr
