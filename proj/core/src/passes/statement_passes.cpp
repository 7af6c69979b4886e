// remove-if, unroll-loops and simplify: passes that only rewrite statement
// bodies and expressions, never declarations.

#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/printer.hpp"
#include "pass_util.hpp"

namespace cpforge::passes {

using namespace pivot;
using detail::for_each_body;

// ---------------------------------------------------------------------------
// remove-if

namespace {

Expr conjunction(const std::vector<Statement>& branch, const NodeLoc& loc);

std::vector<Statement> remove_ifs(const std::vector<Statement>& body) {
  std::vector<Statement> out;
  for (const auto& s : body) {
    if (const auto* f = s.as<Forall>()) {
      Forall g = *f;
      g.body = remove_ifs(f->body);
      out.push_back(Statement{std::move(g), s.loc});
    } else if (const auto* i = s.as<IfStmt>()) {
      Expr then = conjunction(remove_ifs(i->thenBody), s.loc);
      Expr e = binary(BinaryOp::Implies, i->cond, std::move(then), s.loc);
      if (i->elseBody) {
        Expr otherwise = conjunction(remove_ifs(*i->elseBody), s.loc);
        e = binary(BinaryOp::And, std::move(e),
                   binary(BinaryOp::Implies, unary(UnaryOp::Not, i->cond), std::move(otherwise)), s.loc);
      }
      out.push_back(Statement{Constraint{std::move(e)}, s.loc});
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Expr conjunction(const std::vector<Statement>& branch, const NodeLoc& loc) {
  std::optional<Expr> acc;
  for (const auto& s : branch) {
    const auto* c = s.as<Constraint>();
    if (!c) {
      throw PassError(PassError::Kind::Unsupported,
                      std::string("if branch contains a ") + (s.is<Forall>() ? "forall" : "let") + " statement",
                      s.loc.value ? s.loc.value : loc.value);
    }
    acc = acc ? binary(BinaryOp::And, std::move(*acc), c->expr) : c->expr;
  }
  return acc ? *acc : bool_lit(true);
}

}  // namespace

PassResult remove_if(const PivotModel& p) {
  PassResult out{p, {}, {}};
  for_each_body(out.model, [](std::vector<Statement>& body) { body = remove_ifs(body); });
  return out;
}

// ---------------------------------------------------------------------------
// unroll-loops

namespace {

// Outermost loop first: once its index is replaced by a literal, the bounds
// of nested loops (`w1+1..w`) become foldable.
std::vector<Statement> unroll(const std::vector<Statement>& body, const ConstEnv& env) {
  std::vector<Statement> out;
  for (const auto& s : body) {
    const auto* f = s.as<Forall>();
    if (!f) {
      out.push_back(s);
      continue;
    }
    auto lo = eval_int(f->lower, env);
    auto hi = eval_int(f->upper, env);
    if (!lo || !hi) {
      const Expr& bad = lo ? f->upper : f->lower;
      throw PassError(PassError::Kind::NonConstantBound,
                      "bound '" + to_source(bad) + "' of forall '" + f->index + "' is not constant",
                      bad.loc.value ? bad.loc.value : s.loc.value);
    }
    for (std::int64_t k = *lo; k <= *hi; ++k) {
      for (auto& t : unroll(substitute(f->body, f->index, int_lit(k)), env)) out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

PassResult unroll_loops(const PivotModel& p) {
  PassResult out{p, {}, {}};
  ConstEnv env = detail::scoped_constants(p);
  for_each_body(out.model, [&](std::vector<Statement>& body) { body = unroll(body, env); });
  return out;
}

// ---------------------------------------------------------------------------
// simplify

namespace {

bool is_atom(const Expr& e) { return e.is<VarRef>() || e.is<BoolLit>(); }

// `x` and `not x` for an atomic x.
bool complementary(const Expr& a, const Expr& b) {
  const auto* n = b.as<Unary>();
  if (n && n->op == UnaryOp::Not && is_atom(a) && *n->arg == a) return true;
  n = a.as<Unary>();
  return n && n->op == UnaryOp::Not && is_atom(b) && *n->arg == b;
}

std::optional<bool> bool_value(const Expr& e) {
  if (const auto* b = e.as<BoolLit>()) return b->value;
  return std::nullopt;
}

Expr simplify_node(Expr x) {
  if (auto* u = x.as<Unary>()) {
    if (u->op == UnaryOp::Neg)
      if (const auto* i = u->arg->as<IntLit>()) return int_lit(-i->value, x.loc);
    if (u->op == UnaryOp::Not)
      if (auto v = bool_value(*u->arg)) return bool_lit(!*v, x.loc);
    return x;
  }
  auto* b = x.as<Binary>();
  if (!b) return x;
  const Expr& l = *b->lhs;
  const Expr& r = *b->rhs;
  const auto* li = l.as<IntLit>();
  const auto* ri = r.as<IntLit>();

  if (is_arithmetic(b->op) && li && ri) {
    if (b->op == BinaryOp::Div && ri->value == 0)
      throw PassError(PassError::Kind::DivisionByZero, "division by zero in '" + to_source(x) + "'", x.loc.value);
    if (auto v = eval_int(x, {})) return int_lit(*v, x.loc);
    return x;
  }
  if (is_comparison(b->op) && li && ri) {
    std::int64_t a = li->value, c = ri->value;
    bool v = false;
    switch (b->op) {
      case BinaryOp::Eq: v = a == c; break;
      case BinaryOp::Ne: v = a != c; break;
      case BinaryOp::Lt: v = a < c; break;
      case BinaryOp::Le: v = a <= c; break;
      case BinaryOp::Gt: v = a > c; break;
      default: v = a >= c; break;
    }
    return bool_lit(v, x.loc);
  }
  auto lb = bool_value(l);
  auto rb = bool_value(r);
  if ((b->op == BinaryOp::Eq || b->op == BinaryOp::Ne) && lb && rb)
    return bool_lit((*lb == *rb) == (b->op == BinaryOp::Eq), x.loc);

  switch (b->op) {
    case BinaryOp::And:
      if (lb) return *lb ? r : bool_lit(false, x.loc);
      if (rb) return *rb ? l : bool_lit(false, x.loc);
      if (complementary(l, r)) return bool_lit(false, x.loc);
      return x;
    case BinaryOp::Or:
      if (lb) return *lb ? bool_lit(true, x.loc) : r;
      if (rb) return *rb ? bool_lit(true, x.loc) : l;
      if (complementary(l, r)) return bool_lit(true, x.loc);
      return x;
    case BinaryOp::Implies:
      if (lb) return *lb ? r : bool_lit(true, x.loc);
      if (rb) return *rb ? bool_lit(true, x.loc) : simplify_node(unary(UnaryOp::Not, l, x.loc));
      return x;
    default:
      return x;
  }
}

Expr simplify_expr(const Expr& e) { return rewrite(e, simplify_node); }

std::vector<Statement> simplify_body(const std::vector<Statement>& body, std::vector<Problem>& warnings) {
  std::vector<Statement> out;
  for (const auto& s : body) {
    std::visit(overloaded{
                   [&](const Constraint& c) {
                     Expr e = simplify_expr(c.expr);
                     if (auto v = bool_value(e)) {
                       if (*v) return;
                       const auto& where = s.loc.value ? s.loc.value : e.loc.value;
                       warnings.push_back(Problem{Severity::Warning, where ? where->str() : SourceLocation{}.str(),
                                                  "constraint is always false"});
                     }
                     out.push_back(Statement{Constraint{std::move(e)}, s.loc});
                   },
                   [&](const Forall& f) {
                     Forall g{f.index, simplify_expr(f.lower), simplify_expr(f.upper),
                              simplify_body(f.body, warnings)};
                     out.push_back(Statement{std::move(g), s.loc});
                   },
                   [&](const IfStmt& i) {
                     Expr cond = simplify_expr(i.cond);
                     if (auto v = bool_value(cond)) {
                       const std::vector<Statement>* taken = *v ? &i.thenBody : (i.elseBody ? &*i.elseBody : nullptr);
                       if (taken)
                         for (auto& t : simplify_body(*taken, warnings)) out.push_back(std::move(t));
                       return;
                     }
                     IfStmt j{std::move(cond), simplify_body(i.thenBody, warnings), std::nullopt};
                     if (i.elseBody) j.elseBody = simplify_body(*i.elseBody, warnings);
                     out.push_back(Statement{std::move(j), s.loc});
                   },
                   [&](const Let& l) { out.push_back(Statement{Let{l.name, simplify_expr(l.value)}, s.loc}); },
               },
               s.node);
  }
  return out;
}

void simplify_features(std::vector<Feature>& fs) {
  for (auto& f : fs) {
    if (auto* v = f.as<Variable>()) {
      if (v->array) {
        v->array->n = simplify_expr(v->array->n);
        if (v->array->m) v->array->m = simplify_expr(*v->array->m);
      }
      if (v->domain) {
        if (auto* i = std::get_if<Interval>(&v->domain->node)) {
          i->lower = simplify_expr(i->lower);
          i->upper = simplify_expr(i->upper);
        } else {
          for (auto& x : std::get<ExplicitSet>(v->domain->node).values) x = simplify_expr(x);
        }
      }
    } else if (auto* k = f.as<Constant>()) {
      k->value = simplify_expr(k->value);
    } else if (auto* r = f.as<Record>()) {
      if (r->array) r->array->n = simplify_expr(r->array->n);
      simplify_features(r->elements);
    }
  }
}

}  // namespace

PassResult simplify_constants(const PivotModel& p) {
  PassResult out{p, {}, {}};
  for (auto& e : out.model.elements) {
    if (auto* f = e.as<Feature>()) {
      std::vector<Feature> one{std::move(*f)};
      simplify_features(one);
      *f = std::move(one.front());
    }
    if (auto* c = e.as<ClassType>()) simplify_features(c->features);
  }
  for_each_body(out.model, [&](std::vector<Statement>& body) { body = simplify_body(body, out.warnings); });
  return out;
}

}  // namespace cpforge::passes
