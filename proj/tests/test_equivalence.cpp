#include <gtest/gtest.h>

#include "cases.hpp"
#include "corpus.hpp"
#include "cpforge/checker.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"
#include "cpforge/printer.hpp"
#include "generator.hpp"

using namespace cpforge;
using namespace cpforge::pivot;
using passes::PassId;
using reftest::Outcome;

class HandWritten : public ::testing::TestWithParam<PassId> {};

TEST_P(HandWritten, Equivalent) {
  auto cases = reftest::hand_written_for(GetParam());
  EXPECT_GE(cases.size(), 5u);
  for (const auto& c : cases) {
    SCOPED_TRACE(c.name);
    Outcome o = reftest::run_case(c.model, c.data, c.before, c.pass);
    EXPECT_TRUE(o.eq.equal) << o.dump;
    EXPECT_GT(o.solutions, 0u) << "vacuous case";
  }
}

class Generated : public ::testing::TestWithParam<PassId> {};

TEST_P(Generated, Equivalent) {
  constexpr unsigned kModels = 20;
  std::size_t satisfiable = 0;
  for (unsigned seed = 1; seed <= kModels; ++seed) {
    Outcome o = reftest::run_generated(GetParam(), seed);
    EXPECT_TRUE(o.eq.equal) << o.dump;
    if (o.solutions) ++satisfiable;
  }
  EXPECT_GE(satisfiable, kModels / 2) << "generator produces mostly unsatisfiable models";
}

const auto kAllPasses = ::testing::Values(PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums,
                                          PassId::RemoveIf, PassId::UnrollLoops, PassId::SimplifyConstants,
                                          PassId::FlattenMatrices);

std::string pass_name(const ::testing::TestParamInfo<PassId>& info) {
  std::string s;
  for (char c : std::string(passes::token(info.param))) s += c == '-' ? '_' : c;
  return s;
}

INSTANTIATE_TEST_SUITE_P(Passes, HandWritten, kAllPasses, pass_name);
INSTANTIATE_TEST_SUITE_P(Passes, Generated, kAllPasses, pass_name);

TEST(Generator, Deterministic) {
  for (auto id : passes::all_passes()) {
    auto a = reftest::generate_model(id, 7);
    auto b = reftest::generate_model(id, 7);
    EXPECT_EQ(a.model, b.model);
    EXPECT_EQ(a.data, b.data);
  }
}

TEST(Generator, WithinSizeLimits) {
  for (auto id : passes::all_passes()) {
    for (unsigned seed = 1; seed <= 20; ++seed) {
      auto g = reftest::generate_model(id, seed);
      PivotModel m = oracle::with_constants(frontend::load(g.model, g.data), {});
      if (id == PassId::FlattenRecords && g.model.find("class") != std::string::npos) m = passes::flatten_classes(m).model;
      auto sols = oracle::solutions(m);
      ASSERT_FALSE(has_errors(checker::check(frontend::load(g.model, g.data)))) << g.model;
      oracle::Instance small;
      small.maxUniverse = 4;
      small.maxDomainWidth = 4;
      // at most four cells, each with at most four values (sets: 2^4 subsets)
      small.maxSearchSpace = 65536;
      EXPECT_NO_THROW(oracle::search_space(m, small)) << g.model;
      EXPECT_LE(oracle::search_space(m, small), 65536.0) << g.model;
      if (!sols.empty()) EXPECT_LE(sols.solutions.front().size(), 4u) << g.model;
    }
  }
}

// A transformation that loosens a constraint must be caught.
TEST(Oracle, DetectsABrokenTransformation) {
  PivotModel a = frontend::load("int x in [1, 3];\nint y in [1, 3];\nconstraint c {\n x < y;\n}\n", "");
  PivotModel b = frontend::load("int x in [1, 3];\nint y in [1, 3];\nconstraint c {\n x <= y;\n}\n", "");
  auto eq = oracle::equivalent(a, b, passes::NameMap{});
  EXPECT_FALSE(eq.equal);
  ASSERT_TRUE(eq.witness);
  EXPECT_FALSE(eq.witnessInA);
  EXPECT_EQ(oracle::to_string(*eq.witness), "x=1 y=1");
}

TEST(Oracle, DetectsAWrongNameMap) {
  PivotModel a = frontend::load("int x[2] in [1, 2];\nconstraint c {\n x[1] = 1;\n}\n", "");
  passes::NameMap swap;
  // plain rename; the output pins the other cell
  swap.entries.push_back({"x", "y", 0, false, {}});
  PivotModel b = frontend::load("int y[2] in [1, 2];\nconstraint c {\n y[2] = 1;\n}\n", "");
  EXPECT_FALSE(oracle::equivalent(a, b, swap).equal);
}
