#pragma once

// Top-level construction of an SMR(m,n;k,3) for every admissible (m,n,k),
// and the list of admissible triples.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "smr/assembly.hpp"
#include "smr/base_constructions.hpp"
#include "smr/core.hpp"
#include "smr/even_k_partitions.hpp"
#include "smr/odd_k_partitions.hpp"
#include "smr/search.hpp"
#include "smr/verifier.hpp"

namespace smr {

struct Generated {
  SparseRectangle rect;
  std::string route;        // which construction produced the array
  std::uint64_t nodes = 0;  // search nodes spent, 0 for closed forms
};

namespace detail {

// The part of `total` left after `spent` nodes, keeping the time limit in
// the same proportion.
inline SearchBudget remaining(const SearchBudget& total, std::uint64_t spent) {
  SearchBudget out = total;
  out.max_nodes = spent < total.max_nodes ? total.max_nodes - spent : 0;
  out.max_millis = total.max_nodes == 0 ? 0 : total.max_millis * out.max_nodes / total.max_nodes;
  return out;
}

// Odd n. In order, each on what the earlier steps left of the budget:
// a searched MR shifted to zero sums (given a quarter of the budget), a
// searched SMR(3,n) with a searched block partition, then a direct search.
inline Generated generate_odd(const Params& p, const SearchBudget& budget) {
  std::uint64_t spent = 0;
  SearchBudget quarter = budget;
  quarter.max_nodes = budget.max_nodes / 4;
  quarter.max_millis = budget.max_millis / 4;
  const SearchResult mr = search_mr(p, quarter);
  spent += mr.nodes;
  if (mr.status == SearchStatus::found) return {mr_to_smr(*mr.rect, p), "searched MR, shifted", spent};

  if (auto rect = assemble_on_searched_base(p, remaining(budget, spent), spent)) {
    return {*rect, "searched SMR(3,n) with searched blocks, assembled", spent};
  }
  const SearchResult direct = search_smr(p, remaining(budget, spent));
  spent += direct.nodes;
  if (direct.status == SearchStatus::found) return {*direct.rect, "direct search", spent};
  fail(ErrorCode::search_exhausted, concat("desk-scale limit: no SMR", p, " found within ", budget.max_nodes, " nodes"));
}

}  // namespace detail

// Builds an SMR(m,n;k,3), recording the route taken. Throws
// ErrorCode::inadmissible when mk != 3n or m, k lie outside [3, n], and
// ErrorCode::search_exhausted when an odd-n search runs out of budget.
inline Generated generate_detailed(int m, int n, int k, const SearchBudget& budget = {}) {
  const Params p = Params::make(m, n, k);
  Generated out{SparseRectangle(0, 0, {}), "", 0};
  if (m == 4 && n == 12 && k == 9) {
    out = {fixed_smr_4_12(), "fixed SMR(4,12;9,3)", 0};
  } else if (n % 2 == 1) {
    out = detail::generate_odd(p, budget);
  } else if (k == n) {
    out = {smr3_even(n), "closed-form SMR(3,n)", 0};
  } else if (k == 3) {
    out = {smr_square_k3(n, budget), "negated columns of SMR(3,n), assembled", 0};
  } else if (k % 2 == 0) {
    out = {assemble(smr3_even(n), build_partition_even(n, k), p), "even-k partition, assembled", 0};
  } else {
    out = {assemble(smr3_even(n), build_partition_odd(n, k, budget), p), "odd-k partition, assembled", 0};
  }
  if (auto report = verify_smr(out.rect, p); !report.passed()) {
    detail::fail(ErrorCode::construction_defect, detail::concat("generated SMR", p, " failed verification: ", report.summary()));
  }
  return out;
}

inline SparseRectangle generate(int m, int n, int k, const SearchBudget& budget = {}) { return generate_detailed(m, n, k, budget).rect; }

// Every admissible (m,n,k) with n <= n_max, ordered by n, then m.
inline std::vector<Params> enumerate_params(int n_max) {
  std::vector<Params> out;
  for (int n = 3; n <= n_max; ++n) {
    for (int m = 3; m <= n; ++m) {
      if ((3 * n) % m != 0) continue;
      const int k = 3 * n / m;
      if (!admissibility_violation(m, n, k)) out.push_back(Params::make(m, n, k));
    }
  }
  return out;
}

}  // namespace smr
