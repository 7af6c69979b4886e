#include <gtest/gtest.h>

#include "corpus.hpp"
#include "cpforge/inject.hpp"
#include "cpforge/lexer.hpp"
#include "cpforge/parser.hpp"
#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/printer.hpp"

using namespace cpforge;
using namespace cpforge::pivot;

namespace {

Expr parse(const char* text) { return frontend::parse_expr(text); }

const Binary& bin(const Expr& e) { return std::get<Binary>(e.node); }

}  // namespace

TEST(Parser, ArithmeticBindsTighterThanComparison) {
  Expr e = parse("a + b * c >= d");
  EXPECT_EQ(bin(e).op, BinaryOp::Ge);
  EXPECT_EQ(bin(*bin(e).lhs).op, BinaryOp::Add);
  EXPECT_EQ(bin(*bin(*bin(e).lhs).rhs).op, BinaryOp::Mul);
}

TEST(Parser, AllComparisonOperators) {
  const std::vector<std::pair<const char*, BinaryOp>> cases = {
      {"a = b", BinaryOp::Eq}, {"a != b", BinaryOp::Ne}, {"a < b", BinaryOp::Lt},
      {"a <= b", BinaryOp::Le}, {"a > b", BinaryOp::Gt}, {"a >= b", BinaryOp::Ge}};
  for (const auto& [text, op] : cases) EXPECT_EQ(bin(parse(text)).op, op) << text;
}

TEST(Parser, LogicalPrecedence) {
  Expr e = parse("a or b and c implies d");
  EXPECT_EQ(bin(e).op, BinaryOp::Implies);
  EXPECT_EQ(bin(*bin(e).lhs).op, BinaryOp::Or);
  EXPECT_EQ(bin(*bin(*bin(e).lhs).rhs).op, BinaryOp::And);
}

TEST(Parser, AccessPaths) {
  Expr e = parse("weeks[w1].groups[g1].players");
  const auto& ref = std::get<VarRef>(e.node);
  ASSERT_EQ(ref.path.size(), 3u);
  EXPECT_EQ(ref.path[0].name, "weeks");
  EXPECT_EQ(ref.path[1].indices.size(), 1u);
  EXPECT_TRUE(ref.path[2].indices.empty());
}

TEST(Parser, SyntaxErrorCarriesLocation) {
  try {
    frontend::parse_model("main class M {\n int x in [1, 2];\n constraint c {\n  x = ;\n }\n}\n", "m.scm");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.where().file, "m.scm");
    EXPECT_EQ(e.where().line, 4);
    EXPECT_EQ(e.where().column, 7);
    EXPECT_EQ(e.message().rfind("syntax error at ';'", 0), 0u) << e.message();
  }
}

TEST(Parser, UnknownCharacterIsASyntaxError) {
  EXPECT_THROW(frontend::parse_model("int x in [1, 2];\nconstraint c { x = 1 ? 2; }\n"), SyntaxError);
}

TEST(Parser, DataHeaderAndComments) {
  auto d = frontend::parse_data("// data\nmodel Foo;\nint n := 3; // trailing\nenum E := {a, b};\n");
  ASSERT_TRUE(d.modelName);
  EXPECT_EQ(*d.modelName, "Foo");
  EXPECT_EQ(d.decls.size(), 2u);
}

TEST(Inject, ResolvesEnumLiterals) {
  auto m = frontend::load("main class M {\n Colour c;\n constraint z {\n  c != red;\n  c != Colour.blue;\n }\n}\n",
                          "enum Colour := {red, blue};\n");
  const auto* cls = m.main_class();
  ASSERT_NE(cls, nullptr);
  const auto* zone = cls->features[1].as<ConstraintZone>();
  ASSERT_NE(zone, nullptr);
  const auto& first = bin(std::get<Constraint>(zone->statements[0].node).expr);
  const auto& second = bin(std::get<Constraint>(zone->statements[1].node).expr);
  EXPECT_EQ(*first.rhs, enum_lit("Colour", "red"));
  EXPECT_EQ(*second.rhs, enum_lit("Colour", "blue"));
}

TEST(Inject, UnresolvedNameIsReportedWithLocation) {
  try {
    frontend::load("main class M {\n int x in [1, n];\n}\n", "", "m.scm", "m.scd");
    FAIL() << "expected an injection error";
  } catch (const InjectError& e) {
    EXPECT_EQ(e.kind(), InjectError::Kind::UnresolvedName);
    EXPECT_EQ(e.name(), "n");
    EXPECT_EQ(e.where().file, "m.scm");
    EXPECT_EQ(e.where().line, 2);
  }
}

TEST(Inject, DuplicateNameIsRejected) {
  EXPECT_THROW(frontend::load("main class M {\n int x in [1, 2];\n bool x;\n}\n", ""), InjectError);
}

TEST(Inject, InheritedFeaturesAreVisible) {
  EXPECT_NO_THROW(frontend::load(
      "abstract class A {\n int v in [1, 2];\n}\nclass B extends A {\n constraint c {\n  v = 1;\n }\n}\n"
      "main class M {\n B b;\n}\n",
      ""));
}

TEST(Inject, ModelNameFromMainClassOrHeader) {
  EXPECT_EQ(reftest::load_corpus("golfers").name, "SocialGolfers");
  EXPECT_EQ(reftest::load_corpus("send").name, "Send");
}

// extract_source . inject reaches a fixed point after one step: re-injecting
// the extracted text gives the same pivot model and the same text.
class RoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(RoundTrip, ExtractInjectIsIdempotent) {
  PivotModel m1 = reftest::load_corpus(GetParam());
  SourceText t1 = frontend::extract_source(m1);
  PivotModel m2 = frontend::load(t1.model, t1.data);
  EXPECT_EQ(m1, m2);
  SourceText t2 = frontend::extract_source(m2);
  EXPECT_EQ(t1.model, t2.model);
  EXPECT_EQ(t1.data, t2.data);
}

INSTANTIATE_TEST_SUITE_P(Corpus, RoundTrip, ::testing::ValuesIn(reftest::clean_corpus()));

TEST(RoundTrip, TransformedGolfersReparses) {
  PivotModel m = reftest::load_corpus("golfers");
  for (auto id : {passes::PassId::FlattenClasses, passes::PassId::FlattenRecords, passes::PassId::RemoveEnums}) {
    m = passes::run_pass(id, m).model;
    SourceText t = frontend::extract_source(m);
    EXPECT_EQ(frontend::load(t.model, t.data), m) << passes::token(id);
  }
}
