#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "smr/base_constructions.hpp"
#include "smr/search.hpp"
#include "smr/verifier.hpp"

using namespace smr;

namespace {

using Grid = std::vector<std::vector<Value>>;

Grid dense(const SparseRectangle& r) {
  Grid g(static_cast<std::size_t>(r.rows()), std::vector<Value>(static_cast<std::size_t>(r.cols())));
  for (const Cell& c : r.cells()) g[c.row][c.col] = c.value;
  return g;
}

Grid transpose(const Grid& g) {
  Grid t(g[0].size(), std::vector<Value>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g[0].size(); ++j) t[j][i] = g[i][j];
  return t;
}

Grid mirror(Grid g) {
  for (auto& row : g) std::reverse(row.begin(), row.end());
  return g;
}

// The 8 rotations and reflections of a square grid.
std::vector<Grid> symmetries(const Grid& g) {
  std::vector<Grid> out;
  Grid cur = g;
  for (int i = 0; i < 4; ++i) {
    out.push_back(cur);
    out.push_back(mirror(cur));
    cur = mirror(transpose(cur));
  }
  return out;
}

}  // namespace

TEST(SearchSmr, FindsSmallFullRectangles) {
  for (int n : {2, 4}) {
    const Params p = Params::structural(3, n, n);
    const auto r = search_smr(p);
    ASSERT_EQ(r.status, SearchStatus::found) << n;
    EXPECT_TRUE(verify_smr(*r.rect, p).passed());
  }
}

TEST(SearchSmr, ThreeByThreeWithTwoPerRowDoesNotExist) {
  const auto r = search_smr(Params::unchecked(3, 3, 2, 2));
  EXPECT_EQ(r.status, SearchStatus::none_exists);
}

TEST(SearchSmr, FindsOddShapes) {
  for (const auto& [m, n, k] : std::vector<std::array<int, 3>>{{3, 3, 3}, {5, 5, 3}, {3, 5, 5}, {7, 7, 3}, {3, 9, 9}}) {
    const Params p = Params::make(m, n, k);
    const auto r = search_smr(p);
    ASSERT_EQ(r.status, SearchStatus::found) << m << "," << n << "," << k;
    EXPECT_TRUE(verify_smr(*r.rect, p).passed());
  }
}

TEST(SearchSmr, TinyBudgetReportsExhaustion) {
  SearchBudget tiny;
  tiny.max_nodes = 5;
  EXPECT_EQ(search_smr(Params::make(9, 9, 3), tiny).status, SearchStatus::exhausted);
}

TEST(SearchSmr, Deterministic) {
  const Params p = Params::make(5, 5, 3);
  const auto a = search_smr(p);
  const auto b = search_smr(p);
  ASSERT_EQ(a.status, SearchStatus::found);
  EXPECT_EQ(*a.rect, *b.rect);
  EXPECT_EQ(a.nodes, b.nodes);
}

// Rows and columns only are constrained, so the search may return any
// semi-magic square; those with magic diagonals are the 8 images of Lo Shu.
TEST(SearchMr, ThreeByThreeAgainstBruteForce) {
  const auto r = search_mr(Params::make(3, 3, 3));
  ASSERT_EQ(r.status, SearchStatus::found);
  std::vector<Value> v{0, 1, 2, 3, 4, 5, 6, 7, 8};
  std::set<Grid> semi, magic;
  do {
    const Grid g{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}};
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && g[i][0] + g[i][1] + g[i][2] == 12 && g[0][i] + g[1][i] + g[2][i] == 12;
    if (!ok) continue;
    semi.insert(g);
    if (g[0][0] + g[1][1] + g[2][2] == 12 && g[0][2] + g[1][1] + g[2][0] == 12) magic.insert(g);
  } while (std::next_permutation(v.begin(), v.end()));
  EXPECT_TRUE(semi.count(dense(*r.rect)));
  const auto lo_shu = symmetries({{7, 0, 5}, {2, 4, 6}, {3, 8, 1}});
  EXPECT_EQ(magic, std::set<Grid>(lo_shu.begin(), lo_shu.end()));
  EXPECT_EQ(magic.size(), 8u);
}

TEST(SearchMr, TwoByTwoDoesNotExist) { EXPECT_EQ(search_mr(Params::unchecked(2, 2, 2, 2)).status, SearchStatus::none_exists); }

TEST(CountSmr, ThreeByTwoMatchesBruteForce) {
  std::vector<Value> v{-3, -2, -1, 1, 2, 3};
  long long expected = 0;
  do {
    const bool rows = v[0] + v[1] == 0 && v[2] + v[3] == 0 && v[4] + v[5] == 0;
    const bool cols = v[0] + v[2] + v[4] == 0 && v[1] + v[3] + v[5] == 0;
    expected += rows && cols;
  } while (std::next_permutation(v.begin(), v.end()));
  const auto got = count_smr(Params::structural(3, 2, 2), 1'000'000);
  EXPECT_FALSE(got.saturated);
  EXPECT_EQ(got.count, expected);
  EXPECT_GT(expected, 0);
}

TEST(CountSmr, RejectsLargeShapes) { EXPECT_THROW(count_smr(Params::make(3, 12, 12), 1), Error); }

TEST(ZeroSumBlocks, NegationClosedTriplesFromMultiplesOfThree) {
  ZeroSumBlockQuery q;
  q.ground = row_sets(10).r3;
  q.count = 2;
  const auto r = search_zero_sum_blocks(q);
  ASSERT_EQ(r.status, SearchStatus::found);
  ASSERT_EQ(r.blocks.size(), 2u);
  EXPECT_EQ(r.blocks[0].sum(), 0);
  EXPECT_EQ(r.blocks[1], r.blocks[0].negated());
  for (Value v : r.blocks[0]) EXPECT_EQ(v % 3, 0);
}

TEST(ZeroSumBlocks, ImpossibleQueries) {
  ZeroSumBlockQuery q;
  q.ground = Block{1, -1, 2, -2};
  q.count = 1;
  q.negation_closed = false;
  EXPECT_EQ(search_zero_sum_blocks(q).status, SearchStatus::none_exists);

  ZeroSumBlockQuery quota;
  quota.ground = row_sets(10).r1;
  quota.rows = row_sets(10);
  quota.quotas = {BlockQuota{{0, 3, 0}, 2}};
  EXPECT_EQ(search_zero_sum_blocks(quota).status, SearchStatus::none_exists);
}

TEST(ZeroSumBlocks, TenByFiveRowQuotas) {
  const RowSets rows = row_sets(10);
  std::vector<Value> both(rows.r1.begin(), rows.r1.end());
  both.insert(both.end(), rows.r2.begin(), rows.r2.end());
  ZeroSumBlockQuery q;
  q.ground = Block(both);
  q.rows = rows;
  q.quotas = {BlockQuota{{1, 2, 0}, 2}, BlockQuota{{2, 1, 0}, 2}};
  const auto r = search_zero_sum_blocks(q);
  ASSERT_EQ(r.status, SearchStatus::found);
  ASSERT_EQ(r.blocks.size(), 4u);
  std::set<Value> seen;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.blocks[i].sum(), 0);
    int in_r1 = 0;
    for (Value v : r.blocks[i]) {
      EXPECT_TRUE(seen.insert(v).second);
      in_r1 += rows.row_of(v) == 0;
    }
    EXPECT_EQ(in_r1, i < 2 ? 1 : 2);
  }
  const std::vector<Block> s1(r.blocks.begin(), r.blocks.begin() + 2);
  const std::vector<Block> s2(r.blocks.begin() + 2, r.blocks.end());
  EXPECT_TRUE(verify_s12(s1, s2, rows, Params::make(6, 10, 5)).passed());
}

TEST(BandPattern, EveryColumnGetsSCells) {
  const auto p = band_pattern(9, 15, 5, 3);
  ASSERT_TRUE(p.has_value());
  std::vector<int> load(15, 0);
  for (const auto& row : *p) {
    EXPECT_EQ(row.size(), 5u);
    for (int c : row) ++load[c];
  }
  EXPECT_TRUE(std::all_of(load.begin(), load.end(), [](int x) { return x == 3; }));
  EXPECT_FALSE(band_pattern(3, 5, 4, 3).has_value());
}
