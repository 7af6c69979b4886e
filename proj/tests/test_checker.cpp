#include <gtest/gtest.h>

#include <algorithm>

#include "cases.hpp"
#include "corpus.hpp"
#include "cpforge/checker.hpp"
#include "cpforge/inject.hpp"

using namespace cpforge;

namespace {

using reftest::Defect;

std::vector<Problem> check_fixture(const std::string& name) {
  auto m = frontend::load_files(reftest::corpus_file("defects/" + name + ".scm"),
                                reftest::corpus_file("defects/" + name + ".scd"));
  return checker::check(m);
}

std::string tail(const std::string& location) {
  auto slash = location.find_last_of('/');
  return slash == std::string::npos ? location : location.substr(slash + 1);
}

std::string dump(const std::vector<Problem>& ps) {
  std::string s;
  for (const auto& p : ps) s += p.str() + "\n";
  return s;
}

}  // namespace

class DefectFixture : public ::testing::TestWithParam<Defect> {};

TEST_P(DefectFixture, ReportsErrorAtLocation) {
  const Defect& d = GetParam();
  auto problems = check_fixture(d.fixture);
  bool found = std::any_of(problems.begin(), problems.end(), [&](const Problem& p) {
    return p.severity == Severity::Error && tail(p.location) == d.location &&
           p.description.find(d.text) != std::string::npos;
  });
  EXPECT_TRUE(found) << "wanted " << d.location << " '" << d.text << "', got:\n" << dump(problems);
}

INSTANTIATE_TEST_SUITE_P(Defects, DefectFixture, ::testing::ValuesIn(reftest::defects()),
                         [](const auto& info) { return info.param.fixture + std::to_string(info.index); });

TEST(Checker, SingletonDomainIsOnlyAWarning) {
  auto problems = check_fixture("inverted");
  auto it = std::find_if(problems.begin(), problems.end(),
                         [](const Problem& p) { return p.description.find("'w'") != std::string::npos; });
  ASSERT_NE(it, problems.end());
  EXPECT_EQ(it->severity, Severity::Warning);
  EXPECT_EQ(tail(it->location), "inverted.scm:3:2");
}

TEST(Checker, OneErrorPerCycle) {
  auto problems = check_fixture("inherit");
  auto n = std::count_if(problems.begin(), problems.end(),
                         [](const Problem& p) { return p.description.find("cycle") != std::string::npos; });
  EXPECT_EQ(n, 1);
}

TEST(Checker, ProblemRendering) {
  Problem p{Severity::Error, "m.scm:2:3", "bad"};
  EXPECT_EQ(p.str(), "error m.scm:2:3 bad");
  EXPECT_TRUE(has_errors({p}));
  EXPECT_FALSE(has_errors({Problem{Severity::Warning, "m.scm:1:1", "w"}}));
}

TEST(Checker, IndexMustBeInteger) {
  auto m = frontend::load("int x[2] in [1, 3];\nbool b;\nconstraint c {\n x[b] = 1;\n}\n", "");
  EXPECT_TRUE(has_errors(checker::check_types(m)));
}

TEST(Checker, ArrayWithoutIndex) {
  auto m = frontend::load("int x[2] in [1, 3];\nconstraint c {\n x = 1;\n}\n", "");
  EXPECT_TRUE(has_errors(checker::check_types(m)));
}

TEST(Checker, BooleanConnectivesNeedBooleans) {
  auto m = frontend::load("int x in [1, 3];\nbool b;\nconstraint c {\n b and x;\n}\n", "");
  EXPECT_TRUE(has_errors(checker::check_types(m)));
}

class CleanCorpus : public ::testing::TestWithParam<std::string> {};

TEST_P(CleanCorpus, NoErrors) {
  auto problems = checker::check(reftest::load_corpus(GetParam()));
  EXPECT_FALSE(has_errors(problems)) << dump(problems);
}

INSTANTIATE_TEST_SUITE_P(Corpus, CleanCorpus, ::testing::ValuesIn(reftest::clean_corpus()));
