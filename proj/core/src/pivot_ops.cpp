#include "cpforge/pivot_ops.hpp"

namespace cpforge::pivot {

// ---------------------------------------------------------------------------
// substitute

Expr substitute(const Expr& e, const std::string& name, const Expr& replacement) {
  return std::visit(
      overloaded{
          [&](const VarRef& ref) -> Expr {
            VarRef out = ref;
            for (auto& step : out.path)
              for (auto& idx : step.indices) idx = substitute(idx, name, replacement);
            if (out.path.front().name != name) return Expr{std::move(out), e.loc};
            if (out.path.size() == 1 && out.path.front().indices.empty()) return replacement;
            // Head renamed inside a longer path: splice when the replacement is
            // itself an unindexed reference, otherwise keep the head.
            const auto* rep = replacement.as<VarRef>();
            if (!rep || !rep->path.back().indices.empty()) return Expr{std::move(out), e.loc};
            std::vector<AccessStep> path = rep->path;
            path.back().indices = std::move(out.path.front().indices);
            for (std::size_t i = 1; i < out.path.size(); ++i) path.push_back(std::move(out.path[i]));
            return Expr{VarRef{std::move(path)}, e.loc};
          },
          [&](const Unary& u) -> Expr {
            return unary(u.op, substitute(*u.arg, name, replacement), e.loc);
          },
          [&](const Binary& b) -> Expr {
            return binary(b.op, substitute(*b.lhs, name, replacement),
                          substitute(*b.rhs, name, replacement), e.loc);
          },
          [&](const Card& c) -> Expr { return card(substitute(*c.arg, name, replacement), e.loc); },
          [&](const auto&) -> Expr { return e; },
      },
      e.node);
}

Statement substitute(const Statement& s, const std::string& name, const Expr& replacement) {
  return std::visit(
      overloaded{
          [&](const Constraint& c) -> Statement {
            return Statement{Constraint{substitute(c.expr, name, replacement)}, s.loc};
          },
          [&](const Forall& f) -> Statement {
            Forall out{f.index, substitute(f.lower, name, replacement),
                       substitute(f.upper, name, replacement), f.body};
            if (f.index != name) out.body = substitute(f.body, name, replacement);
            return Statement{std::move(out), s.loc};
          },
          [&](const IfStmt& i) -> Statement {
            IfStmt out{substitute(i.cond, name, replacement),
                       substitute(i.thenBody, name, replacement), std::nullopt};
            if (i.elseBody) out.elseBody = substitute(*i.elseBody, name, replacement);
            return Statement{std::move(out), s.loc};
          },
          [&](const Let& l) -> Statement {
            return Statement{Let{l.name, substitute(l.value, name, replacement)}, s.loc};
          },
      },
      s.node);
}

std::vector<Statement> substitute(const std::vector<Statement>& body, const std::string& name,
                                  const Expr& replacement) {
  std::vector<Statement> out;
  out.reserve(body.size());
  bool shadowed = false;
  for (const auto& s : body) {
    out.push_back(shadowed ? s : substitute(s, name, replacement));
    if (const auto* l = s.as<Let>(); l && l->name == name) shadowed = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// free_names

namespace {

void collect_free(const Expr& e, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const VarRef& ref) {
                   out.insert(ref.path.front().name);
                   for (const auto& step : ref.path)
                     for (const auto& idx : step.indices) collect_free(idx, out);
                 },
                 [&](const Unary& u) { collect_free(*u.arg, out); },
                 [&](const Binary& b) {
                   collect_free(*b.lhs, out);
                   collect_free(*b.rhs, out);
                 },
                 [&](const Card& c) { collect_free(*c.arg, out); },
                 [](const auto&) {},
             },
             e.node);
}

}  // namespace

std::set<std::string> free_names(const Expr& e) {
  std::set<std::string> out;
  collect_free(e, out);
  return out;
}

std::set<std::string> free_names(const Statement& s) {
  return std::visit(
      overloaded{
          [](const Constraint& c) { return free_names(c.expr); },
          [](const Forall& f) {
            auto out = free_names(f.lower);
            out.merge(free_names(f.upper));
            auto inner = free_names(f.body);
            inner.erase(f.index);
            out.merge(inner);
            return out;
          },
          [](const IfStmt& i) {
            auto out = free_names(i.cond);
            out.merge(free_names(i.thenBody));
            if (i.elseBody) out.merge(free_names(*i.elseBody));
            return out;
          },
          [](const Let& l) { return free_names(l.value); },
      },
      s.node);
}

std::set<std::string> free_names(const std::vector<Statement>& body) {
  std::set<std::string> out;
  std::set<std::string> bound;
  for (const auto& s : body) {
    for (const auto& n : free_names(s))
      if (!bound.count(n)) out.insert(n);
    if (const auto* l = s.as<Let>()) bound.insert(l->name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// fresh names

std::string fresh_name(const std::string& prefix, const std::set<std::string>& taken) {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = prefix + std::to_string(k);
    if (!taken.count(candidate)) return candidate;
  }
}

std::string FreshNames::next() {
  std::string n = fresh_name(prefix_, taken_);
  taken_.insert(n);
  return n;
}

namespace {

void declared_in_body(const std::vector<Statement>& body, std::set<std::string>& out) {
  for (const auto& s : body) {
    if (const auto* f = s.as<Forall>()) {
      out.insert(f->index);
      declared_in_body(f->body, out);
    } else if (const auto* i = s.as<IfStmt>()) {
      declared_in_body(i->thenBody, out);
      if (i->elseBody) declared_in_body(*i->elseBody, out);
    } else if (const auto* l = s.as<Let>()) {
      out.insert(l->name);
    }
  }
}

void declared_in_features(const std::vector<Feature>& features, std::set<std::string>& out) {
  for (const auto& f : features) {
    out.insert(f.name());
    if (const auto* z = f.as<ConstraintZone>()) declared_in_body(z->statements, out);
    if (const auto* r = f.as<Record>()) declared_in_features(r->elements, out);
  }
}

}  // namespace

std::set<std::string> all_declared_names(const PivotModel& m) {
  std::set<std::string> out;
  for (const auto& e : m.elements) {
    out.insert(e.name());
    std::visit(overloaded{
                   [&](const EnumType& t) { out.insert(t.literals.begin(), t.literals.end()); },
                   [&](const ClassType& c) { declared_in_features(c.features, out); },
                   [&](const Feature& f) { declared_in_features({f}, out); },
                   [&](const Predicate& p) { declared_in_body(p.statements, out); },
               },
               e.node);
  }
  return out;
}

// ---------------------------------------------------------------------------
// census

namespace {

void count_expr(const Expr& e, Census& c) {
  std::visit(overloaded{
                 [&](const EnumLit&) { ++c.enumLiterals; },
                 [&](const VarRef& ref) {
                   for (const auto& step : ref.path)
                     for (const auto& idx : step.indices) count_expr(idx, c);
                 },
                 [&](const Unary& u) { count_expr(*u.arg, c); },
                 [&](const Binary& b) {
                   count_expr(*b.lhs, c);
                   count_expr(*b.rhs, c);
                 },
                 [&](const Card& k) { count_expr(*k.arg, c); },
                 [](const auto&) {},
             },
             e.node);
}

void count_body(const std::vector<Statement>& body, Census& c) {
  for (const auto& s : body) {
    std::visit(overloaded{
                   [&](const Constraint& k) {
                     ++c.constraints;
                     count_expr(k.expr, c);
                   },
                   [&](const Forall& f) {
                     ++c.foralls;
                     count_expr(f.lower, c);
                     count_expr(f.upper, c);
                     count_body(f.body, c);
                   },
                   [&](const IfStmt& i) {
                     ++c.ifs;
                     count_expr(i.cond, c);
                     count_body(i.thenBody, c);
                     if (i.elseBody) count_body(*i.elseBody, c);
                   },
                   [&](const Let& l) {
                     ++c.lets;
                     count_expr(l.value, c);
                   },
               },
               s.node);
  }
}

void count_domain(const Domain& d, Census& c) {
  std::visit(overloaded{
                 [&](const Interval& i) {
                   count_expr(i.lower, c);
                   count_expr(i.upper, c);
                 },
                 [&](const ExplicitSet& s) {
                   for (const auto& v : s.values) count_expr(v, c);
                 },
             },
             d.node);
}

void count_features(const std::vector<Feature>& features, Census& c) {
  for (const auto& f : features) {
    std::visit(overloaded{
                   [&](const Variable& v) {
                     ++c.variables;
                     if (v.array && v.array->is_matrix()) ++c.matrices;
                     if (v.domain) count_domain(*v.domain, c);
                   },
                   [&](const Constant& k) {
                     ++c.constants;
                     count_expr(k.value, c);
                   },
                   [&](const ConstraintZone& z) {
                     ++c.zones;
                     count_body(z.statements, c);
                   },
                   [&](const Record& r) {
                     ++c.records;
                     count_features(r.elements, c);
                   },
               },
               f.node);
  }
}

}  // namespace

Census census(const PivotModel& m) {
  Census c;
  for (const auto& e : m.elements) {
    std::visit(overloaded{
                   [&](const EnumType&) { ++c.enums; },
                   [&](const ClassType& k) {
                     ++c.classes;
                     count_features(k.features, c);
                   },
                   [&](const Feature& f) { count_features({f}, c); },
                   [&](const Predicate& p) { count_body(p.statements, c); },
               },
               e.node);
  }
  return c;
}

Census census(const std::vector<Statement>& body) {
  Census c;
  count_body(body, c);
  return c;
}

// ---------------------------------------------------------------------------
// traversal

namespace {

void exprs_in_body(std::vector<Statement>& body, const std::function<void(Expr&)>& fn) {
  for (auto& s : body) {
    std::visit(overloaded{
                   [&](Constraint& c) { fn(c.expr); },
                   [&](Forall& f) {
                     fn(f.lower);
                     fn(f.upper);
                     exprs_in_body(f.body, fn);
                   },
                   [&](IfStmt& i) {
                     fn(i.cond);
                     exprs_in_body(i.thenBody, fn);
                     if (i.elseBody) exprs_in_body(*i.elseBody, fn);
                   },
                   [&](Let& l) { fn(l.value); },
               },
               s.node);
  }
}

void exprs_in_dims(std::optional<ArrayDims>& dims, const std::function<void(Expr&)>& fn) {
  if (!dims) return;
  fn(dims->n);
  if (dims->m) fn(*dims->m);
}

void exprs_in_feature(Feature& f, const std::function<void(Expr&)>& fn) {
  {
    std::visit(overloaded{
                   [&](Variable& v) {
                     exprs_in_dims(v.array, fn);
                     if (!v.domain) return;
                     std::visit(overloaded{
                                    [&](Interval& i) {
                                      fn(i.lower);
                                      fn(i.upper);
                                    },
                                    [&](ExplicitSet& s) {
                                      for (auto& x : s.values) fn(x);
                                    },
                                },
                                v.domain->node);
                   },
                   [&](Constant& k) { fn(k.value); },
                   [&](ConstraintZone& z) { exprs_in_body(z.statements, fn); },
                   [&](Record& r) {
                     exprs_in_dims(r.array, fn);
                     for (auto& x : r.elements) exprs_in_feature(x, fn);
                   },
               },
               f.node);
  }
}

}  // namespace

void for_each_expr(PivotModel& m, const std::function<void(Expr&)>& fn) {
  for (auto& e : m.elements) {
    std::visit(overloaded{
                   [](EnumType&) {},
                   [&](ClassType& c) {
                     for (auto& f : c.features) exprs_in_feature(f, fn);
                   },
                   [&](Feature& f) { exprs_in_feature(f, fn); },
                   [&](Predicate& p) { exprs_in_body(p.statements, fn); },
               },
               e.node);
  }
}

Expr rewrite(const Expr& e, const std::function<Expr(Expr)>& fn) {
  Expr rebuilt = std::visit(
      overloaded{
          [&](const VarRef& ref) -> Expr {
            VarRef out = ref;
            for (auto& step : out.path)
              for (auto& idx : step.indices) idx = rewrite(idx, fn);
            return Expr{std::move(out), e.loc};
          },
          [&](const Unary& u) -> Expr { return unary(u.op, rewrite(*u.arg, fn), e.loc); },
          [&](const Binary& b) -> Expr {
            Expr lhs = rewrite(*b.lhs, fn);  // left operand first: callers may number what they see
            return binary(b.op, std::move(lhs), rewrite(*b.rhs, fn), e.loc);
          },
          [&](const Card& c) -> Expr { return card(rewrite(*c.arg, fn), e.loc); },
          [&](const auto&) -> Expr { return e; },
      },
      e.node);
  return fn(std::move(rebuilt));
}

// ---------------------------------------------------------------------------
// constants and arithmetic

ConstEnv constant_env(const PivotModel& m, const ConstEnv& overrides) {
  ConstEnv env = overrides;
  for (const auto& e : m.elements) {
    const auto* k = e.feature_as<Constant>();
    if (!k || overrides.count(k->name)) continue;
    if (auto v = eval_int(k->value, env)) env[k->name] = *v;
  }
  return env;
}

namespace {

std::optional<std::int64_t> apply_arith(BinaryOp op, std::int64_t a, std::int64_t b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0) return std::nullopt;
      return a / b;  // truncates toward zero
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<std::int64_t> eval_int(const Expr& e, const ConstEnv& env) {
  return std::visit(
      overloaded{
          [](const IntLit& i) -> std::optional<std::int64_t> { return i.value; },
          [&](const VarRef&) -> std::optional<std::int64_t> {
            const auto* n = simple_name(e);
            if (!n) return std::nullopt;
            auto it = env.find(*n);
            if (it == env.end()) return std::nullopt;
            return it->second;
          },
          [&](const Unary& u) -> std::optional<std::int64_t> {
            if (u.op != UnaryOp::Neg) return std::nullopt;
            auto v = eval_int(*u.arg, env);
            if (!v) return std::nullopt;
            return -*v;
          },
          [&](const Binary& b) -> std::optional<std::int64_t> {
            if (!is_arithmetic(b.op)) return std::nullopt;
            auto l = eval_int(*b.lhs, env);
            auto r = eval_int(*b.rhs, env);
            if (!l || !r) return std::nullopt;
            return apply_arith(b.op, *l, *r);
          },
          [](const auto&) -> std::optional<std::int64_t> { return std::nullopt; },
      },
      e.node);
}

Expr fold_literals(const Expr& e) {
  return rewrite(e, [](Expr x) -> Expr {
    if (auto* u = x.as<Unary>(); u && u->op == UnaryOp::Neg)
      if (const auto* i = u->arg->as<IntLit>()) return int_lit(-i->value, x.loc);
    if (auto* b = x.as<Binary>(); b && is_arithmetic(b->op)) {
      const auto* l = b->lhs->as<IntLit>();
      const auto* r = b->rhs->as<IntLit>();
      if (l && r)
        if (auto v = apply_arith(b->op, l->value, r->value)) return int_lit(*v, x.loc);
    }
    return x;
  });
}

Expr linearize(const std::vector<Expr>& indices, const std::vector<Expr>& dims) {
  Expr acc = indices.front();
  for (std::size_t k = 1; k < indices.size(); ++k) {
    acc = binary(BinaryOp::Add,
                 binary(BinaryOp::Mul, binary(BinaryOp::Sub, std::move(acc), int_lit(1)), dims[k]),
                 indices[k]);
  }
  return fold_literals(acc);
}

std::int64_t linearize(const std::vector<std::int64_t>& indices,
                       const std::vector<std::int64_t>& dims) {
  std::int64_t acc = indices.front();
  for (std::size_t k = 1; k < indices.size(); ++k) acc = (acc - 1) * dims[k] + indices[k];
  return acc;
}

Expr product(const std::vector<Expr>& sizes) {
  Expr acc = sizes.front();
  for (std::size_t k = 1; k < sizes.size(); ++k) acc = binary(BinaryOp::Mul, std::move(acc), sizes[k]);
  return fold_literals(acc);
}

}  // namespace cpforge::pivot
