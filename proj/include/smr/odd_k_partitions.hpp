#pragma once

// Odd k: the zero-sum triple families S1, S2 (rows 1 and 2 of the base) and
// S3 (row 3), the partition of {±1..±3n/2} into 3n/k zero-sum k-blocks built
// from them, and the SMR(n,n;3,3) squares.
//
// Every triple is column-distinct in smr3_even(n) and every family is listed
// as triple, negation, triple, negation, ... so any even-length prefix is
// again closed under negation.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "smr/assembly.hpp"
#include "smr/base_constructions.hpp"
#include "smr/core.hpp"
#include "smr/search.hpp"
#include "smr/verifier.hpp"

namespace smr {

struct TripleFamilies {
  std::vector<Block> s1;
  std::vector<Block> s2;
  std::vector<Block> s3;
  int p = 0;      // ceil(q/4)
  int alpha = 0;  // floor((n-8)/12)
};

namespace detail {

inline Params odd_k_params(int n, int k, const char* what) {
  if (n < 2 || n % 2 != 0 || k < 5 || k % 2 == 0 || k >= n || (3 * n) % k != 0) {
    fail(ErrorCode::inadmissible, concat(what, " needs even n, odd k >= 5, k < n and k | 3n; got (n,k)=(", n, ",", k, ")"));
  }
  return Params::make(3 * n / k, n, k);
}

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Python-style floor division for possibly negative numerators.
inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

inline void push_with_negation(std::vector<Block>& out, Triple t) {
  Block b({t[0], t[1], t[2]});
  out.push_back(b);
  out.push_back(b.negated());
}

// S1 (one element in R1, two in R2) and S2 (two in R1, one in R2) from the
// closed forms, with the two extra triples when n mod k = 2k/3 and q = 0
// (mod 4).
inline std::pair<std::vector<Block>, std::vector<Block>> s12_formula(int n, int k) {
  const int q = n / k;
  const int r = n % k;
  const int p = ceil_div(q, 4);
  const int h = 3 * n / 2;
  std::vector<Block> s1, s2;
  for (int i = 0; i < p; ++i) {
    push_with_negation(s1, {3 * i + 1, h - 2 - 12 * i, -(h - 1 - 9 * i)});
    push_with_negation(s1, {3 * i + 2, h - 7 - 9 * i, -(h - 5 - 6 * i)});
  }
  for (int i = 0; i < p; ++i) {
    if (n % 4 == 0) {
      const int c = 3 * n / 4;
      push_with_negation(s2, {3 * i + 3 * p + 1, c - 2 - 6 * i, -(c - 1 + 3 * (p - i))});
      push_with_negation(s2, {3 * i + 3 * p + 2, c - 4 - 6 * i, -(c - 2 + 3 * (p - i))});
    } else {
      const int c = (3 * n - 2) / 4;
      push_with_negation(s2, {3 * i + 3 * p + 1, c - 6 * i, -(c + 1 + 3 * (p - i))});
      push_with_negation(s2, {3 * i + 3 * p + 2, c - 2 - 6 * i, -(c + 3 * (p - i))});
    }
  }
  // Here 3n = k(3q+2) with q = 0 (mod 4) forces n = 2 (mod 4), so c is exact.
  if (3 * r == 2 * k && q % 4 == 0 && (3 * n - 2) % 4 == 0) {
    const int c = (3 * n - 2) / 4;
    push_with_negation(s1, {6 * p + 1, c + 3 * p + 3, -(c + 9 * p + 4)});
    push_with_negation(s2, {9 * p + 1, c - 6 * p + 3, -(c + 3 * p + 4)});
  }
  return {std::move(s1), std::move(s2)};
}

inline std::vector<Block> s3_formula(int n) {
  const int alpha = floor_div(n - 8, 12);
  std::vector<Block> out;
  for (int i = 0; i <= alpha; ++i) push_with_negation(out, {3 + 6 * i, 6 * alpha + 9 + 6 * i, -(6 * alpha + 12 + 12 * i)});
  const int last = floor_div(alpha - 2, 2);
  for (int i = 0; i <= last; ++i) push_with_negation(out, {12 * alpha + 15 + 6 * i, 6 * alpha - 6 - 12 * i, -(18 * alpha + 9 - 6 * i)});
  return out;
}

inline std::vector<Value> union_values(const Block& a, const Block& b) {
  std::vector<Value> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline BlockSearchResult search_triple_families(int n, std::vector<BlockQuota> quotas, const Block& ground,
                                                const SearchBudget& budget,
                                                const std::function<bool(const std::vector<Block>&)>& accept = {}) {
  const SparseRectangle base = smr3_even(n);
  ZeroSumBlockQuery query;
  query.ground = ground;
  query.block_size = 3;
  query.column_of = column_index(base);
  query.rows = row_sets(n);
  query.quotas = std::move(quotas);
  query.negation_closed = true;
  return search_zero_sum_blocks(query, budget, accept);
}

}  // namespace detail

// S1 and S2 for (n,k): the tabulated small cases, otherwise the closed forms.
// Output is gated by verify_s12; a failing family is replaced by a searched one.
inline std::pair<std::vector<Block>, std::vector<Block>> build_s1_s2(int n, int k, const SearchBudget& budget = {}) {
  const Params p = detail::odd_k_params(n, k, "build_s1_s2");
  const RowSets rows = row_sets(n);
  auto fam = has_small_case_s12(n, k) ? small_case_s12(n, k) : detail::s12_formula(n, k);
  if (verify_s12(fam.first, fam.second, rows, p).passed()) return fam;

  const int c = required_family_size(p);
  const Block ground(detail::union_values(rows.r1, rows.r2));
  auto found = detail::search_triple_families(n, {{{1, 2, 0}, c}, {{2, 1, 0}, c}}, ground, budget);
  if (found.status != SearchStatus::found) {
    detail::fail(ErrorCode::search_exhausted, detail::concat("no S1/S2 families found for (n,k)=(", n, ",", k, "): ", to_string(found.status)));
  }
  std::vector<Block> s1(found.blocks.begin(), found.blocks.begin() + c);
  std::vector<Block> s2(found.blocks.begin() + c, found.blocks.end());
  if (auto report = verify_s12(s1, s2, rows, p); !report.passed()) {
    detail::fail(ErrorCode::construction_defect, "searched S1/S2 failed verification: " + report.summary());
  }
  return {std::move(s1), std::move(s2)};
}

// S3 for (n,k): the listed special cases, otherwise the closed form.
inline std::vector<Block> build_s3(int n, int k, const SearchBudget& budget = {}) {
  const Params p = detail::odd_k_params(n, k, "build_s3");
  const RowSets rows = row_sets(n);
  auto fam = has_special_s3(n, k) ? special_s3(n, k) : detail::s3_formula(n);
  if (verify_s3(fam, rows, p).passed()) return fam;

  const int c = required_family_size(p);
  auto found = detail::search_triple_families(n, {{{0, 0, 3}, c}}, rows.r3, budget);
  if (found.status != SearchStatus::found) {
    detail::fail(ErrorCode::search_exhausted, detail::concat("no S3 family found for (n,k)=(", n, ",", k, "): ", to_string(found.status)));
  }
  if (auto report = verify_s3(found.blocks, rows, p); !report.passed()) {
    detail::fail(ErrorCode::construction_defect, "searched S3 failed verification: " + report.summary());
  }
  return found.blocks;
}

inline TripleFamilies build_triple_families(int n, int k, const SearchBudget& budget = {}) {
  auto [s1, s2] = build_s1_s2(n, k, budget);
  TripleFamilies out;
  out.s1 = std::move(s1);
  out.s2 = std::move(s2);
  out.s3 = build_s3(n, k, budget);
  out.p = detail::ceil_div(n / k, 4);
  out.alpha = detail::floor_div(n - 8, 12);
  return out;
}

namespace detail {

// Marries triples to negation-closed leftovers of the base rows.
//
// The first c triples of each family are used, c being the required family
// size. With mixed = c - q, that many mixed blocks each take one triple per
// family plus (k/3-3)/2 leftover pairs per row, all in distinct columns. The
// other triples are completed by (k-3)/2 leftover pairs: S2 triples from row
// 1, S1 triples from row 2, S3 triples from row 3. A triple's pairs must avoid
// the value sharing a column with its lone element from the other row.
class OddPartitionBuilder {
 public:
  OddPartitionBuilder(int n, int k, const TripleFamilies& fam, std::uint64_t max_nodes)
      : n_(n), k_(k), base_(smr3_even(n)), col_(column_index(base_)), max_nodes_(max_nodes) {
    const Params p = Params::make(3 * n / k, n, k);
    c_ = required_family_size(p);
    mixed_ = c_ - n / k;
    piece_ = mixed_ > 0 ? (k / 3 - 3) / 2 : 0;
    chunk_ = (k - 3) / 2;
    const std::array<const std::vector<Block>*, 3> all = {&fam.s1, &fam.s2, &fam.s3};
    for (int f = 0; f < 3; ++f) {
      if (static_cast<int>(all[f]->size()) < c_) fail(ErrorCode::precondition, "triple family is smaller than required");
      fams_[f].assign(all[f]->begin(), all[f]->begin() + c_);
      used_[f].assign(static_cast<std::size_t>(c_), false);
    }
    std::set<Value> in_triples;
    for (const auto& f : fams_) {
      for (const Block& b : f) in_triples.insert(b.begin(), b.end());
    }
    for (const Cell& cell : base_.cells()) {
      row_of_[cell.value] = cell.row;
      if (cell.value > 0 && !in_triples.count(cell.value)) pool_[cell.row].push_back(cell.value);
    }
    for (auto& pool : pool_) std::sort(pool.begin(), pool.end());
  }

  std::optional<std::vector<Block>> run() {
    if (!pick_mixed(0)) return std::nullopt;
    return result_;
  }

 private:
  int col_of(Value v) const { return col_.at(v); }

  bool spend() { return ++nodes_ <= max_nodes_; }

  // The value (as |x|) a triple of family f must not be joined with, or 0.
  Value forbidden(int f, const Block& t) const {
    if (f == 2) return 0;
    const int own = f == 0 ? 1 : 0;  // row receiving the triple's pairs
    const int lone = f == 0 ? 0 : 1;
    for (Value v : t) {
      if (row_of_.at(v) == lone) {
        const auto entry = base_.at(own, col_of(v));
        return entry ? std::abs(*entry) : 0;
      }
    }
    return 0;
  }

  // Leftover row receiving the pairs of family f's triples.
  static int target_row(int f) { return f == 0 ? 1 : (f == 1 ? 0 : 2); }

  std::set<Value> forbidden_in_row(int row) const {
    std::set<Value> out;
    for (int f = 0; f < 2; ++f) {
      if (target_row(f) != row) continue;
      for (int i = 0; i < c_; ++i) {
        if (!used_[f][i]) out.insert(forbidden(f, fams_[f][i]));
      }
    }
    return out;
  }

  bool pick_mixed(int made) {
    if (made == mixed_) return finish();
    for (int a = 0; a < c_; ++a) {
      if (used_[0][a]) continue;
      for (int b = 0; b < c_; ++b) {
        if (used_[1][b]) continue;
        for (int d = 0; d < c_; ++d) {
          if (used_[2][d]) continue;
          std::vector<Value> elems;
          for (const Block* t : {&fams_[0][a], &fams_[1][b], &fams_[2][d]}) elems.insert(elems.end(), t->begin(), t->end());
          std::set<int> cols;
          for (Value v : elems) cols.insert(col_of(v));
          if (cols.size() != elems.size()) continue;
          if (!spend()) return false;
          used_[0][a] = used_[1][b] = used_[2][d] = true;
          if (pick_pieces(made, 0, cols, elems)) return true;
          used_[0][a] = used_[1][b] = used_[2][d] = false;
        }
      }
    }
    return false;
  }

  // Chooses the mixed block's pairs row by row; pairs whose value would be
  // forbidden for some remaining triple are preferred, to take them out of
  // the chunk pools. At most a few dozen combinations are tried per row.
  bool pick_pieces(int made, int row, const std::set<int>& cols, std::vector<Value>& elems) {
    if (row == 3) {
      mixed_blocks_.emplace_back(elems);
      if (pick_mixed(made + 1)) return true;
      mixed_blocks_.pop_back();
      return false;
    }
    const auto prefer = forbidden_in_row(row);
    std::vector<Value> avail;
    for (Value x : pool_[row]) {
      if (!taken_.count(x) && !cols.count(col_of(x)) && !cols.count(col_of(-x)) && prefer.count(x)) avail.push_back(x);
    }
    for (Value x : pool_[row]) {
      if (!taken_.count(x) && !cols.count(col_of(x)) && !cols.count(col_of(-x)) && !prefer.count(x)) avail.push_back(x);
    }
    int tried = 0;
    std::vector<Value> comb;
    std::function<bool(std::size_t, std::set<int>&)> choose = [&](std::size_t from, std::set<int>& cc) -> bool {
      if (static_cast<int>(comb.size()) == piece_) {
        if (++tried > 50 || !spend()) return false;
        const std::size_t mark = elems.size();
        for (Value x : comb) {
          elems.push_back(x);
          elems.push_back(-x);
          taken_.insert(x);
        }
        if (pick_pieces(made, row + 1, cc, elems)) return true;
        for (Value x : comb) taken_.erase(x);
        elems.resize(mark);
        return false;
      }
      for (std::size_t i = from; i < avail.size() && tried <= 50; ++i) {
        const Value x = avail[i];
        if (cc.count(col_of(x)) || cc.count(col_of(-x))) continue;
        cc.insert(col_of(x));
        cc.insert(col_of(-x));
        comb.push_back(x);
        if (choose(i + 1, cc)) return true;
        comb.pop_back();
        cc.erase(col_of(x));
        cc.erase(col_of(-x));
      }
      return false;
    };
    std::set<int> cc = cols;
    return choose(0, cc);
  }

  bool finish() {
    std::vector<Block> blocks;
    for (int f = 0; f < 3; ++f) {
      const int row = target_row(f);
      std::vector<Value> pool;
      for (Value x : pool_[row]) {
        if (!taken_.count(x)) pool.push_back(x);
      }
      std::vector<const Block*> rest;
      std::vector<Value> avoid;
      for (int i = 0; i < c_; ++i) {
        if (used_[f][i]) continue;
        rest.push_back(&fams_[f][i]);
        avoid.push_back(forbidden(f, fams_[f][i]));
      }
      auto chunks = assign_chunks(pool, avoid);
      if (!chunks) return false;
      for (std::size_t i = 0; i < rest.size(); ++i) {
        std::vector<Value> elems(rest[i]->begin(), rest[i]->end());
        for (Value x : (*chunks)[i]) {
          elems.push_back(x);
          elems.push_back(-x);
        }
        blocks.emplace_back(std::move(elems));
      }
    }
    blocks.insert(blocks.end(), mixed_blocks_.begin(), mixed_blocks_.end());
    result_ = std::move(blocks);
    return true;
  }

  // Splits `pool` into chunks of chunk_ values, chunk i avoiding avoid[i].
  std::optional<std::vector<std::vector<Value>>> assign_chunks(const std::vector<Value>& pool, const std::vector<Value>& avoid) {
    if (pool.size() != avoid.size() * static_cast<std::size_t>(chunk_)) return std::nullopt;
    std::vector<std::vector<Value>> out(avoid.size());
    std::set<Value> used;
    std::uint64_t local = 0;
    std::function<bool(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t from) -> bool {
      if (i == avoid.size()) return true;
      if (static_cast<int>(out[i].size()) == chunk_) return fill(i + 1, 0);
      for (std::size_t j = from; j < pool.size(); ++j) {
        const Value x = pool[j];
        if (used.count(x) || x == avoid[i]) continue;
        if (++local > 100'000 || !spend()) return false;
        used.insert(x);
        out[i].push_back(x);
        if (fill(i, j + 1)) return true;
        out[i].pop_back();
        used.erase(x);
      }
      return false;
    };
    if (!fill(0, 0)) return std::nullopt;
    return out;
  }

  int n_;
  int k_;
  SparseRectangle base_;
  std::map<Value, int> col_;
  std::map<Value, int> row_of_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  int c_ = 0;
  int mixed_ = 0;
  int piece_ = 0;
  int chunk_ = 0;
  std::array<std::vector<Block>, 3> fams_;
  std::array<std::vector<bool>, 3> used_;
  std::array<std::vector<Value>, 3> pool_;  // positive representatives
  std::set<Value> taken_;                   // positive representatives in mixed blocks
  std::vector<Block> mixed_blocks_;
  std::vector<Block> result_;
};

inline std::optional<std::vector<Block>> try_odd_partition(int n, int k, const TripleFamilies& fam) {
  OddPartitionBuilder builder(n, k, fam, 400'000);
  return builder.run();
}

}  // namespace detail

// Partition of {±1..±3n/2} into 3n/k zero-sum k-blocks near-orthogonal to the
// columns of smr3_even(n), for odd k. (12,9) has no such construction here;
// use fixed_smr_4_12. When the given S1/S2 admit no completion, other S1/S2
// families are searched until one does.
inline Partition build_partition_odd(int n, int k, const SearchBudget& budget = {}) {
  const Params p = detail::odd_k_params(n, k, "build_partition_odd");
  if (n == 12 && k == 9) {
    detail::fail(ErrorCode::precondition, "(n,k)=(12,9) is not covered by the triple construction; use fixed_smr_4_12");
  }
  const SparseRectangle base = smr3_even(n);
  TripleFamilies fam = build_triple_families(n, k, budget);
  auto blocks = detail::try_odd_partition(n, k, fam);
  if (!blocks) {
    const int c = required_family_size(p);
    const RowSets rows = row_sets(n);
    const Block ground(detail::union_values(rows.r1, rows.r2));
    std::set<Value> s3_values;
    for (int i = 0; i < c; ++i) s3_values.insert(fam.s3[i].begin(), fam.s3[i].end());
    const auto found = detail::search_triple_families(
        n, {{{1, 2, 0}, c}, {{2, 1, 0}, c}}, ground, budget, [&](const std::vector<Block>& family) {
          TripleFamilies alt = fam;
          alt.s1.assign(family.begin(), family.begin() + c);
          alt.s2.assign(family.begin() + c, family.end());
          blocks = detail::try_odd_partition(n, k, alt);
          return blocks.has_value();
        });
    if (found.status != SearchStatus::found || !blocks) {
      detail::fail(ErrorCode::construction_defect, detail::concat("no odd-k partition found for (n,k)=(", n, ",", k, ")"));
    }
  }
  if (auto report = verify_block_partition(*blocks, base, k); !report.passed()) {
    detail::fail(ErrorCode::construction_defect, "odd-k partition failed validation: " + report.summary());
  }
  return Partition(std::move(*blocks), SymbolSet::for_cells(3LL * n));
}

namespace detail {

// For odd n: a searched SMR(3,n), then a searched partition of its entries
// into m zero-sum k-blocks with column-distinct elements, assembled. Node
// usage is added to `nodes`.
inline std::optional<SparseRectangle> assemble_on_searched_base(const Params& p, const SearchBudget& budget, std::uint64_t& nodes) {
  const SearchResult base = search_smr(Params::make(3, p.n, p.n), budget);
  nodes += base.nodes;
  if (base.status != SearchStatus::found) return std::nullopt;
  if (p.m == 3) return base.rect;
  ZeroSumBlockQuery query;
  query.ground = Block(symbol_set(p).values());
  query.block_size = p.k;
  query.count = p.m;
  query.column_of = column_index(*base.rect);
  query.negation_closed = false;
  SearchBudget rest = budget;
  rest.max_nodes = budget.max_nodes > base.nodes ? budget.max_nodes - base.nodes : 0;
  const BlockSearchResult blocks = search_zero_sum_blocks(query, rest);
  nodes += blocks.nodes;
  if (blocks.status != SearchStatus::found) return std::nullopt;
  return assemble(*base.rect, Partition(blocks.blocks, symbol_set(p)), p);
}

}  // namespace detail

// An SMR(n,n;3,3). Even n: block j is the negated column j of smr3_even(n),
// which is near-orthogonal to the columns, and the blocks are assembled.
// Odd n: a searched SMR(3,n) with searched column-distinct zero-sum triples,
// then value search on the cyclic three-diagonal pattern, then a general
// search.
inline SparseRectangle smr_square_k3(int n, const SearchBudget& budget = {}) {
  if (n < 3) detail::fail(ErrorCode::inadmissible, detail::concat("SMR(n,n;3,3) needs n >= 3, got ", n));
  const Params p = Params::make(n, n, 3);
  if (n % 2 == 0) {
    const SparseRectangle base = smr3_even(n);
    const Partition cols = column_partition(base);
    std::vector<Block> blocks;
    for (const Block& b : cols.blocks()) blocks.push_back(b.negated());
    return assemble(base, Partition(std::move(blocks), SymbolSet::for_cells(3LL * n)), p);
  }
  std::uint64_t nodes = 0;
  if (auto rect = detail::assemble_on_searched_base(p, budget, nodes)) return *rect;
  SearchResult found = search_smr_on_pattern(p, *band_pattern(n, n, 3, 3), budget);
  if (found.status != SearchStatus::found) found = search_smr(p, budget);
  if (found.status != SearchStatus::found) {
    detail::fail(ErrorCode::search_exhausted, detail::concat("no SMR(", n, ",", n, ";3,3) within the search budget: ", to_string(found.status)));
  }
  return *found.rect;
}

}  // namespace smr
