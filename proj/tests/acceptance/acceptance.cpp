// Runs the twelve acceptance checks and prints one PASS/FAIL line for each.
// Exits non-zero if any check fails or overruns its time limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "smr/smr.hpp"

using namespace smr;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Check {
  std::string name;
  double limit_ms;  // 0 for no time limit
  std::function<Outcome()> run;
};

Outcome fail_with(std::string why) { return {false, std::move(why)}; }

std::string triple(const Params& p) {
  std::ostringstream os;
  os << "(" << p.m << "," << p.n << "," << p.k << ")";
  return os.str();
}

std::set<Value> row_values(const SparseRectangle& r, int row) {
  std::set<Value> out;
  for (const Cell& c : r.row(row)) out.insert(c.value);
  return out;
}

const SparseRectangle kThreeByTen = SparseRectangle::from_dense({{1, -1, 2, -2, 4, -4, 5, -5, 7, -7},
                                                                  {14, 13, -14, 11, -13, 10, -11, 8, -10, -8},
                                                                  {-15, -12, 12, -9, 9, -6, 6, -3, 3, 15}});

std::vector<Block> worked_thirty_by_nine() {
  return {{7, -7, 8, -8, 10, -10, -5, -20, 25},     {11, -11, 13, -13, 14, -14, -4, -22, 26}, {16, -16, 17, -17, 19, -19, 5, 20, -25},
          {23, -23, 28, -28, 29, -29, -1, -43, 44}, {31, -31, 32, -32, 34, -34, -2, -38, 40}, {35, -35, 37, -37, 41, -41, 2, 38, -40},
          {6, -6, 12, -12, 24, -24, 3, 15, -18},    {27, -27, 33, -33, 36, -36, 9, 21, -30},  {39, -39, 42, -42, 45, -45, -9, -21, 30},
          {1, 43, -44, 4, 22, -26, -3, -15, 18}};
}

std::vector<std::pair<int, int>> odd_k_pairs(int n_max) {
  std::vector<std::pair<int, int>> out;
  for (int n = 4; n <= n_max; n += 2) {
    for (int k = 5; k < n; k += 2) {
      if ((3 * n) % k == 0 && 3 * n / k >= 3) out.emplace_back(n, k);
    }
  }
  return out;
}

Outcome sweep(int n_max, bool even, const SearchBudget& budget) {
  int count = 0;
  for (const Params& p : enumerate_params(n_max)) {
    if ((p.n % 2 == 0) != even) continue;
    try {
      const auto g = generate_detailed(p.m, p.n, p.k, budget);
      if (!verify_smr(g.rect, p).passed()) return fail_with(triple(p) + " failed verification");
      if (g.nodes > budget.max_nodes) return fail_with(triple(p) + " overran the node budget");
    } catch (const Error& e) {
      return fail_with(triple(p) + ": " + e.what());
    }
    ++count;
  }
  return {true, std::to_string(count) + " triples"};
}

// Row and column permutations and negation keep an SMR valid; changing one
// value breaks it.
Outcome metamorphic(const SparseRectangle& rect, const Params& p, std::mt19937& rng) {
  std::vector<int> rows(static_cast<std::size_t>(p.m)), cols(static_cast<std::size_t>(p.n));
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  std::vector<Cell> permuted, negated;
  for (const Cell& c : rect.cells()) {
    permuted.push_back({rows[c.row], cols[c.col], c.value});
    negated.push_back({c.row, c.col, -c.value});
  }
  if (!verify_smr(SparseRectangle(p.m, p.n, permuted), p).passed()) return fail_with(triple(p) + " permuted copy rejected");
  if (!verify_smr(SparseRectangle(p.m, p.n, negated), p).passed()) return fail_with(triple(p) + " negated copy rejected");

  const auto symbols = symbol_set(p).values();
  std::uniform_int_distribution<std::size_t> pick_cell(0, rect.filled() - 1);
  std::uniform_int_distribution<Value> delta(1, 2 * symbols.back() + 2);
  std::vector<Cell> mutated(rect.cells().begin(), rect.cells().end());
  const std::size_t i = pick_cell(rng);
  mutated[i].value += (rng() % 2 ? 1 : -1) * delta(rng);
  if (verify_smr(SparseRectangle(p.m, p.n, mutated), p).passed()) return fail_with(triple(p) + " mutated copy accepted");
  return {};
}

std::vector<Check> checks() {
  std::vector<Check> out;

  out.push_back({"three-row tables for n = 2 and 4", 1, [] {
                   if (smr3_even(2) != SparseRectangle::from_dense({{1, -1}, {2, -2}, {-3, 3}})) return fail_with("n = 2 differs");
                   if (smr3_even(4) != SparseRectangle::from_dense({{1, -1, 2, -2}, {5, 4, -5, -4}, {-6, -3, 3, 6}}))
                     return fail_with("n = 4 differs");
                   return Outcome{};
                 }});

  out.push_back({"three-row array for n = 10", 1, [] {
                   return smr3_even(10) == kThreeByTen ? Outcome{true, "30 entries match"} : fail_with("differs");
                 }});

  out.push_back({"fixed SMR(4,12;9,3)", 1, [] {
                   const auto rect = generate(4, 12, 9);
                   if (rect != fixed_smr_4_12()) return fail_with("differs from the fixed array");
                   if (rect.at(0, 1) != 16 || rect.at(1, 0) != 17 || rect.at(3, 0) != -18) return fail_with("spot cells differ");
                   return verify_smr(rect, Params::make(4, 12, 9)).passed() ? Outcome{} : fail_with("verification failed");
                 }});

  out.push_back({"three-row sweep, even n <= 400", 2000, [] {
                   for (int n = 2; n <= 400; n += 2) {
                     const auto a = smr3_even(n);
                     if (!verify_smr(a, Params::unchecked(3, n, n, 3)).passed()) return fail_with("n = " + std::to_string(n));
                     const RowSets rows = row_sets(n);
                     for (int r = 0; r < 3; ++r) {
                       if (row_values(a, r) != std::set<Value>(rows[r].begin(), rows[r].end()))
                         return fail_with("row " + std::to_string(r) + " of n = " + std::to_string(n));
                     }
                   }
                   return Outcome{true, "200 arrays"};
                 }});

  out.push_back({"generate sweep, even n <= 120", 60000, [] { return sweep(120, true, SearchBudget{}); }});

  out.push_back({"generate sweep, odd n <= 15", 0, [] {
                   SearchBudget b;
                   b.max_nodes = 10'000'000;
                   b.max_millis = 600'000;
                   return sweep(15, false, b);
                 }});

  out.push_back({"worked n = 30, k = 9 partition assembles", 10, [] {
                   const auto base = smr3_even(30);
                   const auto blocks = worked_thirty_by_nine();
                   if (auto r = verify_block_partition(blocks, base, 9); !r.passed()) return fail_with(r.summary());
                   const Params p = Params::make(10, 30, 9);
                   const auto rect = assemble(base, Partition(blocks, symbol_set(p)), p);
                   return verify_smr(rect, p).passed() ? Outcome{} : fail_with("assembled array failed");
                 }});

  out.push_back({"triple family sweep, n <= 200", 10000, [] {
                   int count = 0;
                   for (const auto& [n, k] : odd_k_pairs(200)) {
                     const Params p = Params::make(3 * n / k, n, k);
                     const RowSets rows = row_sets(n);
                     const auto [s1, s2] = build_s1_s2(n, k);
                     if (auto r = verify_s12(s1, s2, rows, p); !r.passed()) return fail_with(triple(p) + " S1/S2: " + r.summary());
                     if (auto r = verify_s3(build_s3(n, k), rows, p); !r.passed()) return fail_with(triple(p) + " S3: " + r.summary());
                     ++count;
                   }
                   return Outcome{true, std::to_string(count) + " pairs"};
                 }});

  out.push_back({"tabulated families and the n = 90 multiples of three", 10, [] {
                   for (const auto& [n, k] : odd_k_pairs(30)) {
                     const Params p = Params::make(3 * n / k, n, k);
                     if (has_small_case_s12(n, k)) {
                       const auto [s1, s2] = small_case_s12(n, k);
                       if (!verify_s12(s1, s2, row_sets(n), p).passed()) return fail_with(triple(p) + " table S1/S2");
                     }
                     if (has_special_s3(n, k) && !verify_s3(special_s3(n, k), row_sets(n), p).passed())
                       return fail_with(triple(p) + " table S3");
                   }
                   std::set<Block> want;
                   for (const Block& b : std::vector<Block>{{3, 45, -48}, {9, 51, -60}, {15, 57, -72}, {21, 63, -84}, {27, 69, -96},
                                                            {33, 75, -108}, {39, 81, -120}, {87, 30, -117}, {93, 18, -111}, {99, 6, -105}}) {
                     want.insert(b);
                     want.insert(b.negated());
                   }
                   const auto s3 = build_s3(90, 5);
                   if (s3.size() != 20 || std::set<Block>(s3.begin(), s3.end()) != want) return fail_with("n = 90 family differs");
                   return Outcome{};
                 }});

  out.push_back({"search agrees with constructions, n <= 8", 30000, [] {
                   int count = 0;
                   for (const Params& p : enumerate_params(8)) {
                     const auto found = search_smr(p);
                     if (found.status != SearchStatus::found) return fail_with(triple(p) + " search: " + to_string(found.status));
                     if (!verify_smr(*found.rect, p).passed()) return fail_with(triple(p) + " searched array failed");
                     if (!verify_smr(generate(p.m, p.n, p.k), p).passed()) return fail_with(triple(p) + " generated array failed");
                     ++count;
                   }
                   const auto probe = search_smr(Params::unchecked(3, 3, 2, 2));
                   if (probe.status != SearchStatus::none_exists) return fail_with("(3,3,2) probe: " + std::string(to_string(probe.status)));
                   return Outcome{true, std::to_string(count) + " triples, (3,3,2) none exists"};
                 }});

  out.push_back({"shift of a searched MR(3,3)", 10, [] {
                   const Params p = Params::make(3, 3, 3);
                   const auto mr = search_mr(p);
                   if (mr.status != SearchStatus::found) return fail_with("no MR(3,3) found");
                   if (!verify_smr(mr_to_smr(*mr.rect, p), p).passed()) return fail_with("shifted array failed");
                   try {
                     mr_to_smr(SparseRectangle::from_dense({{0, 5}, {3, 2}, {4, 1}}), Params::structural(3, 2, 2));
                     return fail_with("even cell count accepted");
                   } catch (const Error&) {
                   }
                   return Outcome{};
                 }});

  out.push_back({"verifier invariance and mutation, 100 arrays", 0, [] {
                   std::mt19937 rng(20261016);
                   std::vector<Params> pool;
                   for (const Params& p : enumerate_params(60)) {
                     if (p.n % 2 == 0 || p.n <= 9) pool.push_back(p);
                   }
                   std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                   for (int i = 0; i < 100; ++i) {
                     const Params p = pool[pick(rng)];
                     if (auto o = metamorphic(generate(p.m, p.n, p.k), p, rng); !o.ok) return o;
                   }
                   return Outcome{true, "100 arrays"};
                 }});
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  int index = 0;
  for (const Check& c : checks()) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail_with(std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && c.limit_ms > 0 && ms > c.limit_ms) o = fail_with("over the " + std::to_string(static_cast<int>(c.limit_ms)) + " ms limit");
    failures += !o.ok;
    std::printf("%s %2d %-52s %10.2f ms  %s\n", o.ok ? "PASS" : "FAIL", index, c.name.c_str(), ms, o.detail.c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
