#include <gtest/gtest.h>

#include "corpus.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"
#include "reference.hpp"

using namespace cpforge;
using namespace cpforge::pivot;
using oracle::Strategy;

namespace {

PivotModel queens(int n) { return oracle::with_constants(reftest::load_corpus("queens"), {{"n", n}}); }

PivotModel golfers(int weeks) {
  std::string data = "enum Name := {a, b, c, d};\nint s := 2;\nint w := " + std::to_string(weeks) + ";\nint g := 2;\n";
  return frontend::load(frontend::read_file(reftest::corpus_file("golfers.scm")), data);
}

std::size_t count(const char* model, const char* data = "") {
  return oracle::solutions(frontend::load(model, data)).size();
}

}  // namespace

class QueensCount : public ::testing::TestWithParam<int> {};

TEST_P(QueensCount, MatchesBacktracking) {
  int n = GetParam();
  auto expected = reftest::queens_count(n);
  EXPECT_EQ(oracle::solutions(queens(n)).size(), expected);
}

TEST_P(QueensCount, StrategiesAgree) {
  int n = GetParam();
  EXPECT_EQ(oracle::solutions(queens(n), {}, Strategy::GenerateAndFilter),
            oracle::solutions(queens(n), {}, Strategy::Pruning));
}

INSTANTIATE_TEST_SUITE_P(N, QueensCount, ::testing::Values(4, 5, 6));

TEST(Reference, KnownQueensCounts) {
  // Independent of the oracle: the classic sequence 1, 0, 0, 2, 10, 4, 40.
  EXPECT_EQ(reftest::queens_count(1), 1u);
  EXPECT_EQ(reftest::queens_count(3), 0u);
  EXPECT_EQ(reftest::queens_count(7), 40u);
}

TEST(Golfers, TwoWeeksMatchesReference) {
  EXPECT_EQ(oracle::solutions(golfers(2)).size(), reftest::golfers_count(4, 2, 2, 2));
}

TEST(Golfers, ThreeWeeksMatchesReference) {
  oracle::Instance inst;
  inst.maxSearchSpace = 2e7;
  EXPECT_EQ(oracle::solutions(golfers(3), inst).size(), reftest::golfers_count(4, 2, 3, 2));
}

TEST(Golfers, FourWeeksHasNoSchedule) {
  // only three ways to pair four golfers
  EXPECT_EQ(reftest::golfers_count(4, 2, 4, 2), 0u);
}

TEST(Semantics, DivisionByZeroIsInfeasible) {
  EXPECT_EQ(count("int x in [1, 2];\nint y in [0, 1];\nconstraint c {\n x / y = 1;\n}\n"), 1u);
}

TEST(Semantics, OutOfRangeIndexIsInfeasible) {
  // x = 3 has no a[3]; x = 1 or 2 fixes one cell and frees the other
  EXPECT_EQ(count("int x in [1, 3];\nint a[2] in [1, 2];\nconstraint c {\n a[x] = 2;\n}\n"), 4u);
}

TEST(Semantics, ImplicationAndNegation) {
  // truth table of b implies not c: three of four rows
  EXPECT_EQ(count("bool b;\nbool c;\nconstraint z {\n b implies not c;\n}\n"), 3u);
}

TEST(Semantics, SetCardinalityAndIntersection) {
  // pairs of 2-subsets of {1,2,3} sharing exactly one element: 3 * 2
  EXPECT_EQ(count("int set s in [1, 3];\nint set t in [1, 3];\nconstraint c {\n card(s) = 2;\n card(t) = 2;\n"
                  " card(s intersect t) = 1;\n}\n"),
            6u);
}

TEST(Semantics, ExplicitDomain) {
  EXPECT_EQ(count("int x in {1, 3, 5};\nconstraint c {\n x > 1;\n}\n"), 2u);
}

TEST(Semantics, EnumVariablesUsePositions) {
  auto s = oracle::solutions(frontend::load("Col x;\nconstraint c {\n x != green;\n}\n", "enum Col := {red, green, blue};\n"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(oracle::to_string(s.solutions[0]), "x=1");
  EXPECT_EQ(oracle::to_string(s.solutions[1]), "x=3");
}

TEST(Errors, UnboundedInteger) {
  try {
    oracle::solutions(frontend::load("int x;\n", ""));
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::UnboundedDomain);
  }
}

TEST(Errors, RealVariable) {
  try {
    oracle::solutions(frontend::load("real r in [0.5, 1.5];\n", ""));
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::Unsupported);
  }
}

TEST(Errors, SearchSpaceCap) {
  oracle::Instance inst;
  inst.maxSearchSpace = 100;
  EXPECT_EQ(oracle::search_space(queens(4)), 256.0);
  try {
    oracle::solutions(queens(4), inst);
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.kind(), OracleError::Kind::SearchSpaceExceeded);
  }
}

TEST(Errors, SetUniverseCap) {
  oracle::Instance inst;
  inst.maxUniverse = 2;
  EXPECT_THROW(oracle::solutions(frontend::load("int set s in [1, 3];\n", ""), inst), OracleError);
}

TEST(Constants, OverridesReachLoopBounds) {
  PivotModel base = reftest::load_corpus("queens");
  oracle::Instance inst;
  inst.constants = {{"n", 4}};
  EXPECT_EQ(oracle::solutions(base, inst).size(), 2u);
  EXPECT_EQ(oracle::solutions(oracle::with_constants(base, {{"n", 5}})).size(), 10u);
}

TEST(Translate, LinearisesIndices) {
  oracle::Assignment a = {{{"m", {2, 1}}, oracle::Value{false, 7, {}}}};
  passes::NameMap map;
  map.entries.push_back({"m", "m", 0, true, {var_ref("r"), var_ref("c")}});
  auto t = oracle::translate(a, map, {{"r", 2}, {"c", 3}});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].first.path, "m");
  EXPECT_EQ(t[0].first.indices, (std::vector<std::int64_t>{4}));
}

TEST(Translate, KeepsLeadingIndices) {
  oracle::Assignment a = {{{"r.v", {2, 1}}, oracle::Value{false, 1, {}}}};
  passes::NameMap map;
  map.entries.push_back({"r.v", "r_v", 1, false, {}});
  auto t = oracle::translate(a, map, {});
  EXPECT_EQ(t[0].first.str(), "r_v[2,1]");
}

TEST(Rendering, AssignmentText) {
  oracle::Assignment a = {{{"q", {1}}, oracle::Value{false, 2, {}}}, {{"x", {}}, oracle::Value{true, 0, {1, 2}}}};
  EXPECT_EQ(oracle::to_string(a), "q[1]=2 x={1,2}");
}
