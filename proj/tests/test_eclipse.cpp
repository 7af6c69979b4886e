#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <regex>

#include "corpus.hpp"
#include "cpforge/eclipse.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"

using namespace cpforge;
using namespace cpforge::eclipse;
using passes::PassId;

namespace {

pivot::PivotModel prepared(const std::string& name, const std::vector<PassId>& chain) {
  return passes::run_chain(reftest::load_corpus(name), chain).model;
}

const std::vector<PassId> kGolfersChain = {PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums};

EclModel golfers() { return to_eclipse(prepared("golfers", kGolfersChain)); }

std::size_t loop_depth(const ForLoop& f) {
  std::size_t inner = 0;
  for (const auto& a : f.body)
    if (const auto* g = a.as<ForLoop>()) inner = std::max(inner, loop_depth(*g));
  return inner + 1;
}

void for_each_loop(const std::vector<Atom>& body, const std::function<void(const ForLoop&)>& fn) {
  for (const auto& a : body) {
    if (const auto* f = a.as<ForLoop>()) {
      fn(*f);
      for_each_loop(f->body, fn);
    }
  }
}

// `#(S, V)` followed by `V #= S`, or `#(S, S)` directly.
bool card_equals(const std::vector<Atom>& body, const std::string& bound) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto* c = body[i].as<CardBind>();
    if (!c) continue;
    if (c->out == Term::var(bound)) return true;
    if (i + 1 < body.size()) {
      const auto* k = body[i + 1].as<ConstraintAtom>();
      if (k && k->expr == Term::infix("#=", c->out, Term::var(bound))) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Golfers, PredicateShape) {
  EclModel e = golfers();
  ASSERT_EQ(e.predicates.size(), 1u);
  const Predicate& p = e.predicates[0];
  EXPECT_EQ(p.name, "socialGolfers");
  EXPECT_EQ(p.params, (std::vector<std::string>{"L"}));
  ASSERT_EQ(p.body.size(), 8u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(p.body[i].is<ConstBind>()) << i;
  const auto* sets = p.body[3].as<IntsetsDecl>();
  ASSERT_NE(sets, nullptr);
  EXPECT_EQ(*sets, (IntsetsDecl{"WEEKS_GROUPS_PLAYERS", 12, 1, 9}));
  EXPECT_TRUE(p.body[4].is<ListAlias>());

  const auto* pairs = p.body[5].as<ForLoop>();
  ASSERT_NE(pairs, nullptr);
  EXPECT_EQ(loop_depth(*pairs), 4u);

  const auto* weeks = p.body[6].as<ForLoop>();
  ASSERT_NE(weeks, nullptr);
  ASSERT_EQ(weeks->body.size(), 2u);
  const auto* groups = weeks->body[0].as<ForLoop>();
  ASSERT_NE(groups, nullptr);
  EXPECT_EQ(loop_depth(*groups), 1u);
  EXPECT_TRUE(card_equals(groups->body, "S"));
  const auto* inner = weeks->body[1].as<ForLoop>();
  ASSERT_NE(inner, nullptr);
  EXPECT_EQ(loop_depth(*inner), 2u);

  const auto* label = p.body[7].as<LabelSets>();
  ASSERT_NE(label, nullptr);
  EXPECT_EQ(label->listVar, "L");
  EXPECT_TRUE(label->sets);
}

TEST(Golfers, MatchesGoldenText) {
  std::string golden = frontend::read_file(reftest::corpus_file("golfers.ecl"));
  EXPECT_EQ(emit(golfers()), golden);
}

TEST(Golfers, FreshLocalsRunFromV1ToV12) {
  std::string text = emit(golfers());
  std::regex local("\\bV([0-9]+)\\b");
  int highest = 0;
  std::set<int> seen;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), local); it != std::sregex_iterator(); ++it) {
    int k = std::stoi((*it)[1]);
    seen.insert(k);
    highest = std::max(highest, k);
  }
  EXPECT_EQ(highest, 12);
  EXPECT_EQ(seen.size(), 12u);
  EXPECT_EQ(*seen.begin(), 1);
}

TEST(Golfers, DisjointGroupsBindLiteralCardinality) {
  std::string text = emit(golfers());
  EXPECT_NE(text.find("#(V10 /\\ V12, 0)"), std::string::npos);
}

TEST(Emit, Deterministic) { EXPECT_EQ(emit(golfers()), emit(golfers())); }

class LoopParams : public ::testing::TestWithParam<std::string> {};

// Every name a loop body reads is imported: the iterator or a param.
TEST_P(LoopParams, CoverFreeNames) {
  std::vector<PassId> chain = {PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums,
                               PassId::RemoveIf, PassId::FlattenMatrices};
  EclModel e = to_eclipse(prepared(GetParam(), chain));
  for (const auto& p : e.predicates) {
    for_each_loop(p.body, [&](const ForLoop& f) {
      for (const auto& n : free_names(f.body)) {
        bool imported = n == f.iter || std::find(f.params.begin(), f.params.end(), n) != f.params.end();
        EXPECT_TRUE(imported) << n << " in loop " << f.iter;
      }
    });
  }
}

// No param is imported that the body never reads.
TEST_P(LoopParams, AreMinimal) {
  std::vector<PassId> chain = {PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums,
                               PassId::RemoveIf, PassId::FlattenMatrices};
  EclModel e = to_eclipse(prepared(GetParam(), chain));
  for (const auto& p : e.predicates) {
    for_each_loop(p.body, [&](const ForLoop& f) {
      auto used = free_names(f.body);
      for (const auto& n : f.params)
        EXPECT_NE(std::find(used.begin(), used.end(), n), used.end()) << n << " in loop " << f.iter;
    });
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, LoopParams, ::testing::Values("golfers", "queens", "latin"));

TEST(Locals, Idempotent) {
  auto m = introduce_locals(prepared("golfers", kGolfersChain));
  EXPECT_EQ(introduce_locals(m), m);
  EXPECT_EQ(pivot::census(m).lets, 12u);
}

TEST(Integers, QueensUsesLabeling) {
  std::string text = emit(to_eclipse(prepared("queens", {PassId::FlattenClasses})));
  auto lines = reftest::lines_of(text);
  EXPECT_EQ(lines[0], "queens(L):-");
  EXPECT_NE(std::find(lines.begin(), lines.end(), " dim(Q,[6]),"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), " Q :: 1..6,"), lines.end());
  EXPECT_EQ(lines.back(), " labeling(L).");
}

TEST(Integers, UnrolledQueensHasNoLoops) {
  auto m = prepared("queens", {PassId::FlattenClasses, PassId::RemoveIf, PassId::UnrollLoops,
                               PassId::SimplifyConstants});
  std::string text = emit(to_eclipse(m));
  EXPECT_EQ(text.find("for("), std::string::npos);
  EXPECT_NE(text.find("Q[1]-Q[2] #\\= -1"), std::string::npos);
}

TEST(Unsupported, ClassesAreRejected) {
  try {
    to_eclipse(reftest::load_corpus("golfers"));
    FAIL();
  } catch (const PassError& e) {
    EXPECT_EQ(e.kind(), PassError::Kind::UnsupportedConstruct);
  }
}

TEST(Unsupported, MixedSetAndIntegerVariables) {
  auto m = frontend::load("int x in [1, 3];\nint set s in [1, 3];\nconstraint c {\n card(s) = x;\n}\n", "");
  try {
    to_eclipse(m);
    FAIL();
  } catch (const PassError& e) {
    EXPECT_EQ(e.kind(), PassError::Kind::UnsupportedConstruct);
  }
}

TEST(Unsupported, IfStatements) {
  auto m = frontend::load("int x in [1, 3];\nconstraint c {\n if (x > 1) {\n  x < 3;\n }\n}\n", "");
  EXPECT_THROW(to_eclipse(m), PassError);
}

TEST(Terms, NegativeLiteralsBracketedOnlyUnderArithmetic) {
  Term minus = Term::infix("-", Term::var("X"), Term::number(-2));
  EXPECT_EQ(to_string(minus), "X-(-2)");
  EXPECT_EQ(to_string(Term::infix("#=", Term::var("X"), Term::number(-2))), "X #= -2");
  EXPECT_EQ(to_string(Term::infix("*", Term::infix("+", Term::var("A"), Term::var("B")), Term::var("C"))),
            "(A+B)*C");
  EXPECT_EQ(to_string(Term::infix("and", Term::infix("#=", Term::var("A"), Term::number(1)),
                                  Term::infix("#<", Term::var("B"), Term::number(2)))),
            "(A #= 1) and (B #< 2)");
}

TEST(Emit, LabelOnlyBody) {
  EclModel e{{Predicate{"p", {"L"}, {Atom{LabelSets{"L", true}}}}}};
  EXPECT_EQ(emit(e), "p(L):- label_sets(L).\n");
}
