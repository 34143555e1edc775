#pragma once

// Checks for every axiom of signed magic rectangles, magic rectangles,
// near-orthogonal partitions and the triple families used by the odd-k
// constructions. Each check reports at most one violation per rule, carrying
// the first offending cell or block as a witness.

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smr/core.hpp"

namespace smr {

struct Violation {
  std::string rule;
  std::string detail;
  std::optional<Cell> cell;
  std::optional<std::size_t> block;
};

class VerificationReport {
 public:
  bool passed() const noexcept { return violations_.empty(); }
  explicit operator bool() const noexcept { return passed(); }
  std::span<const Violation> violations() const noexcept { return violations_; }

  bool has(std::string_view rule) const noexcept {
    for (const auto& v : violations_) {
      if (v.rule == rule) return true;
    }
    return false;
  }

  void add(Violation v) { violations_.push_back(std::move(v)); }

  void merge(const VerificationReport& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }

  std::string summary() const {
    if (passed()) return "PASS";
    std::ostringstream os;
    os << "FAIL (" << violations_.size() << " rule" << (violations_.size() == 1 ? "" : "s") << ")";
    for (const auto& v : violations_) {
      os << "\n  [" << v.rule << "] " << v.detail;
      if (v.cell) os << " at " << *v.cell;
      if (v.block) os << " in block " << *v.block;
    }
    return os.str();
  }

 private:
  std::vector<Violation> violations_;
};

inline std::ostream& operator<<(std::ostream& os, const VerificationReport& r) { return os << r.summary(); }

namespace detail {

// Collects the first witness and a count for one rule.
class RuleTally {
 public:
  explicit RuleTally(std::string rule) : rule_(std::move(rule)) {}

  void hit(std::string detail, std::optional<Cell> cell = std::nullopt, std::optional<std::size_t> block = std::nullopt) {
    if (count_++ == 0) first_ = Violation{rule_, std::move(detail), cell, block};
  }

  void flush(VerificationReport& report) {
    if (count_ == 0) return;
    if (count_ > 1) first_.detail += concat(" (", count_, " offenders)");
    report.add(std::move(first_));
  }

 private:
  std::string rule_;
  std::size_t count_ = 0;
  Violation first_;
};

struct LineStats {
  std::vector<int> row_fill, col_fill;
  std::vector<Sum> row_sum, col_sum;
  std::vector<std::optional<Cell>> row_cell, col_cell;  // some cell of each line
};

inline LineStats line_stats(const SparseRectangle& rect) {
  LineStats st;
  st.row_fill.assign(rect.rows(), 0);
  st.col_fill.assign(rect.cols(), 0);
  st.row_sum.assign(rect.rows(), 0);
  st.col_sum.assign(rect.cols(), 0);
  st.row_cell.assign(rect.rows(), std::nullopt);
  st.col_cell.assign(rect.cols(), std::nullopt);
  for (const Cell& c : rect.cells()) {
    ++st.row_fill[c.row];
    ++st.col_fill[c.col];
    st.row_sum[c.row] += c.value;
    st.col_sum[c.col] += c.value;
    if (!st.row_cell[c.row]) st.row_cell[c.row] = c;
    if (!st.col_cell[c.col]) st.col_cell[c.col] = c;
  }
  return st;
}

inline bool check_dimensions(const SparseRectangle& rect, const Params& p, VerificationReport& report) {
  if (rect.rows() == p.m && rect.cols() == p.n) return true;
  report.add({"dimensions", concat("array is ", rect.rows(), "x", rect.cols(), ", expected ", p.m, "x", p.n), std::nullopt, std::nullopt});
  return false;
}

inline void check_fill(const LineStats& st, const Params& p, VerificationReport& report) {
  RuleTally rows("row-fill"), cols("col-fill");
  for (std::size_t r = 0; r < st.row_fill.size(); ++r) {
    if (st.row_fill[r] != p.k) rows.hit(concat("row ", r, " has ", st.row_fill[r], " filled cells, expected ", p.k), st.row_cell[r]);
  }
  for (std::size_t c = 0; c < st.col_fill.size(); ++c) {
    if (st.col_fill[c] != p.s) cols.hit(concat("column ", c, " has ", st.col_fill[c], " filled cells, expected ", p.s), st.col_cell[c]);
  }
  rows.flush(report);
  cols.flush(report);
}

// Entries must be exactly the values lo..hi (optionally skipping zero), each once.
inline void check_symbols(const SparseRectangle& rect, Value lo, Value hi, bool skip_zero, VerificationReport& report) {
  RuleTally foreign("symbol-foreign"), dup("symbol-duplicate"), missing("symbol-missing");
  const auto in_set = [&](Value v) { return v >= lo && v <= hi && !(skip_zero && v == 0); };
  std::vector<const Cell*> seen(static_cast<std::size_t>(static_cast<Sum>(hi) - lo + 1), nullptr);
  for (const Cell& c : rect.cells()) {
    if (!in_set(c.value)) {
      foreign.hit(concat("entry ", c.value, " is not a symbol"), c);
      continue;
    }
    auto& slot = seen[static_cast<std::size_t>(c.value - lo)];
    if (slot) {
      dup.hit(concat("entry ", c.value, " also at (", slot->row, ",", slot->col, ")"), c);
    } else {
      slot = &c;
    }
  }
  for (Value v = lo; v <= hi; ++v) {
    if (in_set(v) && !seen[static_cast<std::size_t>(v - lo)]) missing.hit(concat("symbol ", v, " is missing"));
  }
  foreign.flush(report);
  dup.flush(report);
  missing.flush(report);
}

}  // namespace detail

// Passes iff rect is an SMR(m,n;k,s) for `p`: exact fill counts, entries are
// the symbol set each once, and every row and column sums to zero.
inline VerificationReport verify_smr(const SparseRectangle& rect, const Params& p) {
  using detail::concat;
  VerificationReport report;
  if (!detail::check_dimensions(rect, p, report)) return report;
  const auto st = detail::line_stats(rect);
  detail::check_fill(st, p, report);
  const SymbolSet x = symbol_set(p);
  detail::check_symbols(rect, x.lo, x.hi, !x.contains_zero, report);
  detail::RuleTally rows("row-sum"), cols("col-sum");
  for (std::size_t r = 0; r < st.row_sum.size(); ++r) {
    if (st.row_sum[r] != 0) rows.hit(concat("row ", r, " sums to ", st.row_sum[r]), st.row_cell[r]);
  }
  for (std::size_t c = 0; c < st.col_sum.size(); ++c) {
    if (st.col_sum[c] != 0) cols.hit(concat("column ", c, " sums to ", st.col_sum[c]), st.col_cell[c]);
  }
  rows.flush(report);
  cols.flush(report);
  return report;
}

// Passes iff rect is an MR(m,n;k,s): exact fill counts, entries 0..mk-1 each
// once, all row sums equal and all column sums equal.
inline VerificationReport verify_mr(const SparseRectangle& rect, const Params& p) {
  using detail::concat;
  VerificationReport report;
  if (!detail::check_dimensions(rect, p, report)) return report;
  const auto st = detail::line_stats(rect);
  detail::check_fill(st, p, report);
  detail::check_symbols(rect, 0, static_cast<Value>(p.cells() - 1), false, report);
  detail::RuleTally rows("row-sum"), cols("col-sum");
  for (std::size_t r = 1; r < st.row_sum.size(); ++r) {
    if (st.row_sum[r] != st.row_sum[0]) rows.hit(concat("row ", r, " sums to ", st.row_sum[r], ", row 0 to ", st.row_sum[0]), st.row_cell[r]);
  }
  for (std::size_t c = 1; c < st.col_sum.size(); ++c) {
    if (st.col_sum[c] != st.col_sum[0]) cols.hit(concat("column ", c, " sums to ", st.col_sum[c], ", column 0 to ", st.col_sum[0]), st.col_cell[c]);
  }
  rows.flush(report);
  cols.flush(report);
  return report;
}

// True iff every block of p1 meets every block of p2 in at most one element.
// Throws ErrorCode::precondition when the ground sets differ.
inline bool is_near_orthogonal(const Partition& p1, const Partition& p2) {
  if (!std::equal(p1.ground().begin(), p1.ground().end(), p2.ground().begin(), p2.ground().end())) {
    detail::fail(ErrorCode::precondition, "partitions have different ground sets");
  }
  std::map<Value, std::size_t> owner;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (Value v : p1[i]) owner[v] = i;
  }
  std::vector<std::size_t> seen;
  for (const Block& b : p2.blocks()) {
    seen.clear();
    for (Value v : b) seen.push_back(owner.at(v));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  }
  return true;
}

// Number of triples each family must hold for n = kq + r: q, q+1 or q+2 for
// r = 0, k/3, 2k/3. Throws ErrorCode::precondition for any other remainder.
inline int required_family_size(const Params& p) {
  if (p.r == 0) return p.q;
  if (3 * p.r == p.k) return p.q + 1;
  if (3 * p.r == 2 * p.k) return p.q + 2;
  detail::fail(ErrorCode::precondition, detail::concat("n mod k = ", p.r, " is not 0, k/3 or 2k/3"));
}

namespace detail {

inline void check_triples_disjoint(std::span<const Block* const> blocks, VerificationReport& report, const char* rule) {
  RuleTally tally(rule);
  std::map<Value, std::size_t> owner;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Value v : *blocks[i]) {
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh) tally.hit(concat(v, " appears in blocks ", it->second, " and ", i), std::nullopt, i);
    }
  }
  tally.flush(report);
}

inline void check_negation_closed(std::span<const Block> family, const char* which, VerificationReport& report, const char* rule) {
  RuleTally tally(rule);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Block neg = family[i].negated();
    if (std::find(family.begin(), family.end(), neg) == family.end()) {
      tally.hit(concat(which, " lacks the negation of ", family[i]), std::nullopt, i);
    }
  }
  tally.flush(report);
}

}  // namespace detail

// The five conditions on the triple families S1, S2 over R1 and R2:
// zero sums; S1 triples meet R1 once and R2 twice, S2 the reverse;
// closure under negation; |S1| = |S2| >= q, q+1, q+2 by remainder;
// all triples pairwise disjoint.
inline VerificationReport verify_s12(std::span<const Block> s1, std::span<const Block> s2, const RowSets& rows, const Params& p) {
  using detail::concat;
  VerificationReport report;
  detail::RuleTally sum("s12-zero-sum"), member("s12-membership"), shape("s12-block-size");
  const auto check_family = [&](std::span<const Block> fam, int single_row, int double_row, std::size_t offset, const char* name) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const Block& b = fam[i];
      if (b.size() != 3) shape.hit(concat(name, " block ", b, " is not a 3-subset"), std::nullopt, offset + i);
      if (b.sum() != 0) sum.hit(concat(name, " block ", b, " sums to ", b.sum()), std::nullopt, offset + i);
      int in_single = 0, in_double = 0;
      for (Value v : b) {
        const int row = rows.row_of(v);
        in_single += row == single_row;
        in_double += row == double_row;
      }
      if (in_single != 1 || in_double != 2) {
        member.hit(concat(name, " block ", b, " has ", in_single, " in R", single_row + 1, " and ", in_double, " in R", double_row + 1), std::nullopt,
                   offset + i);
      }
    }
  };
  check_family(s1, 0, 1, 0, "S1");
  check_family(s2, 1, 0, s1.size(), "S2");
  shape.flush(report);
  sum.flush(report);
  member.flush(report);
  detail::check_negation_closed(s1, "S1", report, "s12-negation");
  detail::check_negation_closed(s2, "S2", report, "s12-negation");

  const int need = required_family_size(p);
  if (s1.size() != s2.size() || static_cast<int>(s1.size()) < need) {
    report.add({"s12-size", concat("|S1|=", s1.size(), ", |S2|=", s2.size(), ", need equal sizes >= ", need), std::nullopt, std::nullopt});
  }
  std::vector<const Block*> all;
  for (const Block& b : s1) all.push_back(&b);
  for (const Block& b : s2) all.push_back(&b);
  detail::check_triples_disjoint(all, report, "s12-disjoint");
  return report;
}

// S3: disjoint zero-sum 3-subsets of R3, closed under negation, with
// |S3| >= q, q+1, q+2 by remainder.
inline VerificationReport verify_s3(std::span<const Block> s3, const RowSets& rows, const Params& p) {
  using detail::concat;
  VerificationReport report;
  detail::RuleTally sum("s3-zero-sum"), member("s3-membership"), shape("s3-block-size");
  for (std::size_t i = 0; i < s3.size(); ++i) {
    const Block& b = s3[i];
    if (b.size() != 3) shape.hit(concat("block ", b, " is not a 3-subset"), std::nullopt, i);
    if (b.sum() != 0) sum.hit(concat("block ", b, " sums to ", b.sum()), std::nullopt, i);
    for (Value v : b) {
      if (!rows.r3.contains(v)) {
        member.hit(concat("block ", b, " contains ", v, " outside R3"), std::nullopt, i);
        break;
      }
    }
  }
  shape.flush(report);
  sum.flush(report);
  member.flush(report);
  detail::check_negation_closed(s3, "S3", report, "s3-negation");
  const int need = required_family_size(p);
  if (static_cast<int>(s3.size()) < need) {
    report.add({"s3-size", concat("|S3|=", s3.size(), ", need >= ", need), std::nullopt, std::nullopt});
  }
  std::vector<const Block*> all;
  for (const Block& b : s3) all.push_back(&b);
  detail::check_triples_disjoint(all, report, "s3-disjoint");
  return report;
}

// Conditions for assembling `blocks` over `base`: the blocks partition the
// entries of base, each has `block_size` elements summing to zero, and no
// block holds two entries from one column of base.
inline VerificationReport verify_block_partition(std::span<const Block> blocks, const SparseRectangle& base, int block_size) {
  using detail::concat;
  VerificationReport report;
  std::map<Value, int> col;
  for (const Cell& c : base.cells()) {
    if (!col.emplace(c.value, c.col).second) {
      report.add({"base-distinct", concat("base repeats entry ", c.value), c, std::nullopt});
      return report;
    }
  }
  detail::RuleTally size("block-size"), sum("block-sum"), foreign("partition-foreign"), overlap("partition-overlap"), missing("partition-missing"),
      ortho("near-orthogonal");
  std::map<Value, std::size_t> owner;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (static_cast<int>(b.size()) != block_size) size.hit(concat("block has ", b.size(), " elements, expected ", block_size), std::nullopt, i);
    if (b.sum() != 0) sum.hit(concat("block sums to ", b.sum()), std::nullopt, i);
    std::map<int, Value> cols_seen;
    for (Value v : b) {
      auto it = col.find(v);
      if (it == col.end()) {
        foreign.hit(concat(v, " is not an entry of the base"), std::nullopt, i);
        continue;
      }
      if (auto [prev, fresh] = owner.emplace(v, i); !fresh) overlap.hit(concat(v, " also in block ", prev->second), std::nullopt, i);
      if (auto [prev, fresh] = cols_seen.emplace(it->second, v); !fresh) {
        ortho.hit(concat(prev->second, " and ", v, " share base column ", it->second), std::nullopt, i);
      }
    }
  }
  for (const auto& [v, c] : col) {
    if (!owner.count(v)) missing.hit(concat(v, " is in no block"));
  }
  size.flush(report);
  sum.flush(report);
  foreign.flush(report);
  overlap.flush(report);
  missing.flush(report);
  ortho.flush(report);
  return report;
}

}  // namespace smr
