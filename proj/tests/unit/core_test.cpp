#include <gtest/gtest.h>

#include <functional>
#include <set>
#include <string>

#include "smr/core.hpp"

using namespace smr;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected smr::Error";
  return ErrorCode::parse;
}

bool mentions(const std::optional<std::string>& why, const std::string& what) { return why && why->find(what) != std::string::npos; }

}  // namespace

TEST(Params, FullThreeRowShape) {
  const Params p = Params::make(3, 10, 10);
  EXPECT_TRUE(p.admissible);
  EXPECT_EQ(p.s, 3);
  EXPECT_EQ(p.q, 1);
  EXPECT_EQ(p.r, 0);
  EXPECT_EQ(p.ell, 3);
}

TEST(Params, TenByThirtyDerivedFields) {
  const Params p = Params::make(10, 30, 9);
  EXPECT_EQ(p.q, 3);
  EXPECT_EQ(p.r, 3);
  EXPECT_EQ(3 * p.r, p.k);
  EXPECT_EQ(p.ell, 10);
}

TEST(Params, RejectsWrongCellCountNamingTheCondition) {
  try {
    Params::make(3, 5, 4);
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inadmissible);
    EXPECT_NE(std::string(e.what()).find("mk != 3n"), std::string::npos);
  }
}

TEST(Params, NamesTheViolatedBound) {
  EXPECT_TRUE(mentions(admissibility_violation(2, 2, 3), "m < 3"));
  EXPECT_TRUE(mentions(admissibility_violation(6, 4, 2), "k < 3"));
  EXPECT_TRUE(mentions(admissibility_violation(0, 4, 3), "positive"));
  EXPECT_FALSE(admissibility_violation(4, 4, 3));
}

// Brute-force filter written independently of admissibility_violation.
TEST(Params, AdmissibilityMatchesExhaustiveFilter) {
  for (int n = 1; n <= 50; ++n) {
    for (int m = 1; m <= 60; ++m) {
      for (int k = 1; k <= 60; ++k) {
        const bool expected = m * k == 3 * n && m >= 3 && k >= 3 && m <= n && k <= n;
        EXPECT_EQ(!admissibility_violation(m, n, k).has_value(), expected) << m << "," << n << "," << k;
      }
    }
  }
}

TEST(Params, StructuralAcceptsShapesOutsideTheExistenceRange) {
  const Params p = Params::structural(3, 2, 2, 3);
  EXPECT_FALSE(p.admissible);
  EXPECT_EQ(code_of([] { Params::structural(3, 3, 2, 3); }), ErrorCode::inadmissible);
  EXPECT_EQ(code_of([] { Params::structural(2, 2, 3, 3); }), ErrorCode::inadmissible);
}

TEST(Params, UncheckedRejectsOverflowAndNonPositive) {
  EXPECT_EQ(code_of([] { Params::unchecked(0, 1, 1, 1); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { Params::unchecked(1 << 13, 1 << 13, 1 << 13, 1); }), ErrorCode::invalid_argument);
}

TEST(SymbolSetTest, EvenCellCountHasNoZero) {
  const SymbolSet x = symbol_set(Params::make(3, 10, 10));
  EXPECT_EQ(x.lo, -15);
  EXPECT_EQ(x.hi, 15);
  EXPECT_FALSE(x.contains_zero);
  EXPECT_EQ(x.size(), 30);
}

TEST(SymbolSetTest, OddCellCountHasZero) {
  const SymbolSet x = symbol_set(Params::make(3, 3, 3));
  EXPECT_EQ(x.values(), (std::vector<Value>{-4, -3, -2, -1, 0, 1, 2, 3, 4}));
}

TEST(SymbolSetTest, TenByThirty) {
  const SymbolSet x = symbol_set(Params::make(10, 30, 9));
  EXPECT_EQ(x.hi, 45);
  EXPECT_FALSE(x.contains(0));
  EXPECT_TRUE(x.contains(-45));
}

TEST(SymbolSetTest, SizeAndSymmetryForAdmissibleTriples) {
  for (int n = 3; n <= 60; ++n) {
    for (int m = 3; m <= n; ++m) {
      if ((3 * n) % m != 0 || 3 * n / m < 3 || 3 * n / m > n) continue;
      const Params p = Params::make(m, n, 3 * n / m);
      const auto values = symbol_set(p).values();
      ASSERT_EQ(static_cast<int>(values.size()), p.m * p.k);
      const std::set<Value> set(values.begin(), values.end());
      for (Value v : values) EXPECT_TRUE(set.count(-v));
    }
  }
}

TEST(SparseRectangleTest, RejectsOutOfRangeAndRepeatedCells) {
  EXPECT_EQ(code_of([] { SparseRectangle(2, 2, {{2, 0, 1}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { SparseRectangle(2, 2, {{0, 0, 1}, {0, 0, 2}}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { SparseRectangle::from_grid({{1, 2}, {3}}); }), ErrorCode::invalid_argument);
}

TEST(SparseRectangleTest, CellsAreSortedAndAddressable) {
  const SparseRectangle r(2, 3, {{1, 2, 5}, {0, 1, -1}, {1, 0, 7}});
  ASSERT_EQ(r.filled(), 3u);
  EXPECT_EQ(r.cells()[0].col, 1);
  EXPECT_EQ(r.at(1, 2), 5);
  EXPECT_EQ(r.at(0, 0), std::nullopt);
  EXPECT_EQ(r.row(1).size(), 2u);
  EXPECT_EQ(r.column(2).size(), 1u);
  EXPECT_EQ(SparseRectangle::from_grid(r.to_grid()), r);
}

TEST(BlockTest, SortsAndRejectsRepeats) {
  const Block b{3, -1, 2};
  EXPECT_EQ(std::vector<Value>(b.begin(), b.end()), (std::vector<Value>{-1, 2, 3}));
  EXPECT_EQ(b.sum(), 4);
  EXPECT_EQ(b.negated(), (Block{1, -2, -3}));
  EXPECT_FALSE(b.negation_closed());
  EXPECT_TRUE((Block{1, -1, 4, -4}).negation_closed());
  EXPECT_EQ(code_of([] { Block{1, 1}; }), ErrorCode::invalid_argument);
}

TEST(PartitionTest, ChecksCoverAndDisjointness) {
  EXPECT_NO_THROW(Partition({Block{1, -1}, Block{2, -2}}, std::vector<Value>{-2, -1, 1, 2}));
  EXPECT_EQ(code_of([] { Partition({Block{1, -1}, Block{1, 2}}, std::vector<Value>{-1, 1, 2}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { Partition({Block{1, -1}}, std::vector<Value>{-2, -1, 1}); }), ErrorCode::invalid_argument);
}

TEST(ColumnPartition, TwoColumnArray) {
  const auto rect = SparseRectangle::from_dense({{1, -1}, {2, -2}, {-3, 3}});
  const Partition p = column_partition(rect);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (Block{1, 2, -3}));
  EXPECT_EQ(p[1], (Block{-1, -2, 3}));
}

TEST(ColumnPartition, EmptyRectangleGivesEmptyBlocks) {
  const Partition p = column_partition(SparseRectangle(2, 3, {}));
  ASSERT_EQ(p.size(), 3u);
  for (const Block& b : p.blocks()) EXPECT_TRUE(b.empty());
}

TEST(ColumnPartition, RejectsRepeatedEntries) {
  EXPECT_EQ(code_of([] { column_partition(SparseRectangle::from_dense({{1, 1}})); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] { column_partition(SparseRectangle::from_dense({{1}, {1}})); }), ErrorCode::invalid_argument);
}

TEST(RowSetsTest, RowOf) {
  const RowSets rows{Block{1, -1}, Block{2, -2}, Block{3, -3}};
  EXPECT_EQ(rows.row_of(-2), 1);
  EXPECT_EQ(rows.row_of(3), 2);
  EXPECT_EQ(rows.row_of(7), -1);
}
