#include "cpforge/parser.hpp"

#include <cstdlib>

#include "cpforge/lexer.hpp"

namespace cpforge::frontend {

using namespace pivot;

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::string& file) : toks_(tokenize(text, file)) {}

  DataAst data() {
    DataAst out;
    if (peek().keyword("model")) {
      next();
      out.modelName = ident();
      expect_symbol(";");
    }
    while (!at_end()) {
      if (peek().keyword("enum")) {
        out.decls.emplace_back(enum_decl());
      } else if (peek().keyword("int") || peek().keyword("real") || peek().keyword("bool")) {
        out.decls.emplace_back(const_decl());
      } else {
        fail({"'enum'", "'int'", "'real'", "'bool'"});
      }
    }
    return out;
  }

  ModelAst model() {
    ModelAst out;
    while (!at_end()) {
      if (peek().keyword("main") || peek().keyword("abstract") || peek().keyword("class")) {
        out.decls.emplace_back(class_decl());
      } else if (peek().keyword("predicate")) {
        out.decls.emplace_back(predicate());
      } else {
        out.decls.emplace_back(feature());
      }
    }
    return out;
  }

  Expr single_expr() {
    Expr e = expr();
    if (!at_end()) fail({"end of input"});
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().loc, peek().describe(), std::move(expected));
  }

  bool accept_symbol(std::string_view s) {
    if (!peek().symbol(s)) return false;
    next();
    return true;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail({"'" + std::string(s) + "'"});
  }
  void expect_keyword(std::string_view k) {
    if (!peek().keyword(k)) fail({"'" + std::string(k) + "'"});
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail({"identifier"});
    return next().text;
  }

  // ---- declarations

  EnumType enum_decl() {
    EnumType t;
    t.loc = peek().loc;
    expect_keyword("enum");
    t.name = ident();
    expect_symbol(":=");
    expect_symbol("{");
    t.literals.push_back(ident());
    while (accept_symbol(",")) t.literals.push_back(ident());
    expect_symbol("}");
    expect_symbol(";");
    return t;
  }

  TypeRef type_ref() {
    const Token& t = peek();
    if (t.keyword("int")) return next(), TypeRef::int_type();
    if (t.keyword("real")) return next(), TypeRef::real_type();
    if (t.keyword("bool")) return next(), TypeRef::bool_type();
    if (t.kind == Tok::Ident) return TypeRef::named(next().text);
    fail({"type"});
  }

  Constant const_decl() {
    Constant k;
    k.loc = peek().loc;
    k.type = type_ref();
    k.name = ident();
    expect_symbol(":=");
    k.value = expr();
    expect_symbol(";");
    return k;
  }

  std::optional<ArrayDims> dims() {
    if (!accept_symbol("[")) return std::nullopt;
    ArrayDims d{expr(), std::nullopt};
    if (accept_symbol(",")) d.m = expr();
    expect_symbol("]");
    return d;
  }

  Domain domain() {
    if (accept_symbol("[")) {
      Expr lo = expr();
      expect_symbol(",");
      Expr hi = expr();
      expect_symbol("]");
      return interval(std::move(lo), std::move(hi));
    }
    if (accept_symbol("{")) {
      ExplicitSet s;
      if (!peek().symbol("}")) {
        s.values.push_back(expr());
        while (accept_symbol(",")) s.values.push_back(expr());
      }
      expect_symbol("}");
      return Domain{std::move(s)};
    }
    fail({"'['", "'{'"});
  }

  Feature feature() {
    const Token& t = peek();
    SourceLocation loc = t.loc;
    if (t.keyword("constraint")) {
      next();
      ConstraintZone z;
      z.loc = loc;
      z.name = ident();
      z.statements = block();
      return Feature{std::move(z)};
    }
    if (t.keyword("record")) {
      next();
      Record r;
      r.loc = loc;
      r.name = ident();
      r.array = dims();
      expect_symbol("{");
      while (!peek().symbol("}")) {
        if (at_end()) fail({"'}'"});
        r.elements.push_back(feature());
      }
      next();
      return Feature{std::move(r)};
    }
    bool typeStart = t.keyword("int") || t.keyword("real") || t.keyword("bool") || t.kind == Tok::Ident;
    if (!typeStart) fail({"type", "'constraint'", "'record'", "'class'"});

    // A constant is `type name :=`; everything else is a variable.
    if (peek(1).kind == Tok::Ident && peek(2).symbol(":=")) return Feature{const_decl()};

    Variable v;
    v.loc = loc;
    v.type = type_ref();
    if (peek().keyword("set")) {
      next();
      v.isSet = true;
    }
    v.name = ident();
    v.array = dims();
    if (peek().keyword("in")) {
      next();
      v.domain = domain();
    }
    expect_symbol(";");
    return Feature{std::move(v)};
  }

  ClassType class_decl() {
    ClassType c;
    c.loc = peek().loc;
    if (peek().keyword("main")) {
      next();
      c.isMain = true;
    }
    if (peek().keyword("abstract")) {
      next();
      c.isAbstract = true;
    }
    expect_keyword("class");
    c.name = ident();
    if (peek().keyword("extends")) {
      next();
      c.superTypes.push_back(ident());
      while (accept_symbol(",")) c.superTypes.push_back(ident());
    }
    expect_symbol("{");
    while (!peek().symbol("}")) {
      if (at_end()) fail({"'}'"});
      c.features.push_back(feature());
    }
    next();
    return c;
  }

  Predicate predicate() {
    expect_keyword("predicate");
    Predicate p;
    p.name = ident();
    p.statements = block();
    return p;
  }

  // ---- statements

  std::vector<Statement> block() {
    expect_symbol("{");
    std::vector<Statement> out;
    while (!peek().symbol("}")) {
      if (at_end()) fail({"'}'"});
      out.push_back(statement());
    }
    next();
    return out;
  }

  Statement statement() {
    SourceLocation loc = peek().loc;
    if (peek().keyword("forall")) {
      next();
      expect_symbol("(");
      Forall f;
      f.index = ident();
      expect_keyword("in");
      f.lower = expr();
      expect_symbol("..");
      f.upper = expr();
      expect_symbol(")");
      f.body = block();
      return Statement{std::move(f), loc};
    }
    if (peek().keyword("if")) {
      next();
      expect_symbol("(");
      IfStmt s;
      s.cond = expr();
      expect_symbol(")");
      s.thenBody = block();
      if (peek().keyword("else")) {
        next();
        s.elseBody = block();
      }
      return Statement{std::move(s), loc};
    }
    if (peek().keyword("let")) {
      next();
      Let l;
      l.name = ident();
      expect_symbol(":=");
      l.value = expr();
      expect_symbol(";");
      return Statement{std::move(l), loc};
    }
    Expr e = expr();
    expect_symbol(";");
    return Statement{Constraint{std::move(e)}, loc};
  }

  // ---- expressions, loosest first

  Expr expr() { return implies(); }

  Expr implies() {
    Expr lhs = or_expr();
    if (peek().keyword("implies")) {
      SourceLocation loc = next().loc;
      return binary(BinaryOp::Implies, std::move(lhs), implies(), loc);
    }
    return lhs;
  }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (peek().keyword("or")) {
      SourceLocation loc = next().loc;
      lhs = binary(BinaryOp::Or, std::move(lhs), and_expr(), loc);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = not_expr();
    while (peek().keyword("and")) {
      SourceLocation loc = next().loc;
      lhs = binary(BinaryOp::And, std::move(lhs), not_expr(), loc);
    }
    return lhs;
  }

  Expr not_expr() {
    if (peek().keyword("not")) {
      SourceLocation loc = next().loc;
      return unary(UnaryOp::Not, not_expr(), loc);
    }
    return comparison();
  }

  std::optional<BinaryOp> comparison_op() const {
    const Token& t = peek();
    if (t.kind != Tok::Symbol) return std::nullopt;
    if (t.text == "=") return BinaryOp::Eq;
    if (t.text == "!=") return BinaryOp::Ne;
    if (t.text == "<") return BinaryOp::Lt;
    if (t.text == "<=") return BinaryOp::Le;
    if (t.text == ">") return BinaryOp::Gt;
    if (t.text == ">=") return BinaryOp::Ge;
    return std::nullopt;
  }

  // Chains parse left-associatively so that `a = b = c` reaches the checker.
  Expr comparison() {
    Expr lhs = intersect();
    while (auto op = comparison_op()) {
      SourceLocation loc = next().loc;
      lhs = binary(*op, std::move(lhs), intersect(), loc);
    }
    return lhs;
  }

  Expr intersect() {
    Expr lhs = additive();
    while (peek().keyword("intersect")) {
      SourceLocation loc = next().loc;
      lhs = binary(BinaryOp::Intersect, std::move(lhs), additive(), loc);
    }
    return lhs;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    while (peek().symbol("+") || peek().symbol("-")) {
      BinaryOp op = peek().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      SourceLocation loc = next().loc;
      lhs = binary(op, std::move(lhs), multiplicative(), loc);
    }
    return lhs;
  }

  Expr multiplicative() {
    Expr lhs = prefix();
    while (peek().symbol("*") || peek().symbol("/")) {
      BinaryOp op = peek().text == "*" ? BinaryOp::Mul : BinaryOp::Div;
      SourceLocation loc = next().loc;
      lhs = binary(op, std::move(lhs), prefix(), loc);
    }
    return lhs;
  }

  Expr prefix() {
    if (peek().symbol("-")) {
      SourceLocation loc = next().loc;
      // `-3` is a literal, `-(3)` and `-x` are negations.
      if (peek().kind == Tok::Int) return int_lit(-std::stoll(next().text), loc);
      if (peek().kind == Tok::Real) {
        std::string text = "-" + next().text;
        return real_lit(std::strtod(text.c_str(), nullptr), text, loc);
      }
      return unary(UnaryOp::Neg, prefix(), loc);
    }
    return primary();
  }

  Expr primary() {
    const Token& t = peek();
    SourceLocation loc = t.loc;
    switch (t.kind) {
      case Tok::Int: return int_lit(std::stoll(next().text), loc);
      case Tok::Real: {
        std::string text = next().text;
        return real_lit(std::strtod(text.c_str(), nullptr), text, loc);
      }
      case Tok::Ident: return access();
      default: break;
    }
    if (t.keyword("true") || t.keyword("false")) return bool_lit(next().text == "true", loc);
    if (t.keyword("card")) {
      next();
      expect_symbol("(");
      Expr arg = expr();
      expect_symbol(")");
      return card(std::move(arg), loc);
    }
    if (accept_symbol("(")) {
      Expr e = expr();
      expect_symbol(")");
      return e;
    }
    fail({"expression"});
  }

  Expr access() {
    SourceLocation loc = peek().loc;
    std::vector<AccessStep> path;
    do {
      AccessStep step;
      step.name = ident();
      if (accept_symbol("[")) {
        step.indices.push_back(expr());
        if (accept_symbol(",")) step.indices.push_back(expr());
        expect_symbol("]");
      }
      path.push_back(std::move(step));
    } while (accept_symbol("."));
    return var_ref(std::move(path), loc);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

DataAst parse_data(std::string_view text, const std::string& file) { return Parser(text, file).data(); }

ModelAst parse_model(std::string_view text, const std::string& file) { return Parser(text, file).model(); }

Expr parse_expr(std::string_view text, const std::string& file) { return Parser(text, file).single_expr(); }

}  // namespace cpforge::frontend
