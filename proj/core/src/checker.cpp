#include "cpforge/checker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "cpforge/pivot_ops.hpp"
#include "cpforge/scope.hpp"

namespace cpforge::checker {

using namespace pivot;

namespace {

Problem make(Severity sev, const std::optional<SourceLocation>& where, std::string description) {
  return Problem{sev, where ? where->str() : SourceLocation{}.str(), std::move(description)};
}

// ---------------------------------------------------------------------------
// types

struct Ty {
  enum Kind { Int, Real, Bool, Set, Enum, Object, Unknown } kind = Unknown;
  std::string name;  // enum or class name

  bool numeric() const { return kind == Int || kind == Real; }
  bool unknown() const { return kind == Unknown; }
};

std::string describe(const Ty& t) {
  switch (t.kind) {
    case Ty::Int: return "int";
    case Ty::Real: return "real";
    case Ty::Bool: return "bool";
    case Ty::Set: return "set";
    case Ty::Enum: return t.name;
    case Ty::Object: return "object of " + t.name;
    case Ty::Unknown: break;
  }
  return "unknown";
}

Ty of_type(const TypeRef& t, const ModelIndex& index) {
  switch (t.kind) {
    case TypeRef::Kind::Int: return {Ty::Int, {}};
    case TypeRef::Kind::Real: return {Ty::Real, {}};
    case TypeRef::Kind::Bool: return {Ty::Bool, {}};
    case TypeRef::Kind::Named:
      if (index.find_enum(t.name)) return {Ty::Enum, t.name};
      if (index.find_class(t.name)) return {Ty::Object, t.name};
      break;
  }
  return {};
}

class TypeChecker {
 public:
  TypeChecker(const ModelIndex& index, std::vector<Problem>& out) : index_(index), out_(out) {}

  Ty infer(const Expr& e, const ExprSite& site) {
    site_ = &site;
    return visit(e);
  }

 private:
  void error(const Expr& e, std::string msg) {
    out_.push_back(make(Severity::Error, e.loc.value ? e.loc.value : site_->where, std::move(msg)));
  }

  Ty visit(const Expr& e) {
    return std::visit(overloaded{
                          [](const IntLit&) { return Ty{Ty::Int, {}}; },
                          [](const RealLit&) { return Ty{Ty::Real, {}}; },
                          [](const BoolLit&) { return Ty{Ty::Bool, {}}; },
                          [](const EnumLit& l) { return Ty{Ty::Enum, l.enumName}; },
                          [&](const VarRef& r) { return ref(e, r); },
                          [&](const Unary& u) { return unary_op(e, u); },
                          [&](const Binary& b) { return binary_op(e, b); },
                          [&](const Card& c) {
                            Ty a = visit(*c.arg);
                            if (!a.unknown() && a.kind != Ty::Set) {
                              error(e, "card expects a set operand, found " + describe(a));
                              return Ty{};
                            }
                            return Ty{Ty::Int, {}};
                          },
                      },
                      e.node);
  }

  Ty ref(const Expr& e, const VarRef& r) {
    Resolution res = resolve(r, site_->scope, index_);
    for (std::size_t i = 0; i < r.path.size(); ++i) {
      const auto& step = r.path[i];
      for (const auto& idx : step.indices) {
        Ty t = visit(idx);
        if (!t.unknown() && t.kind != Ty::Int)
          error(idx, "index of '" + step.name + "' must be an integer, found " + describe(t));
      }
      if (i >= res.steps.size()) continue;
      const Decl& d = res.steps[i];
      const std::optional<ArrayDims>* dims = nullptr;
      if (d.kind == Decl::Kind::Variable) dims = &d.variable->array;
      if (d.kind == Decl::Kind::Record) dims = &d.record->array;
      bool isArray = dims && dims->has_value();
      if (!isArray && !step.indices.empty()) {
        error(e, "'" + step.name + "' is not an array");
      } else if (isArray && step.indices.empty()) {
        error(e, "array '" + step.name + "' used without an index");
        return {};
      } else if (isArray) {
        std::size_t want = (*dims)->is_matrix() ? 2 : 1;
        if (step.indices.size() != want)
          error(e, "'" + step.name + "' expects " + std::to_string(want) + " index expression(s)");
      }
    }
    if (!res.ok()) return {};
    const Decl& last = res.last();
    switch (last.kind) {
      case Decl::Kind::Index: return {Ty::Int, {}};
      case Decl::Kind::Local: return {};
      case Decl::Kind::Constant: return of_type(last.constant->type, index_);
      case Decl::Kind::Record: return {Ty::Object, last.record->name};
      case Decl::Kind::Variable:
        if (last.variable->isSet) return {Ty::Set, {}};
        return of_type(last.variable->type, index_);
    }
    return {};
  }

  Ty unary_op(const Expr& e, const Unary& u) {
    Ty a = visit(*u.arg);
    if (a.unknown()) return a;
    if (u.op == UnaryOp::Not) {
      if (a.kind != Ty::Bool) {
        error(e, "operator 'not' expects a boolean operand, found " + describe(a));
        return {};
      }
      return a;
    }
    if (!a.numeric()) {
      error(e, "operator '-' expects an arithmetic operand, found " + describe(a));
      return {};
    }
    return a;
  }

  static bool is_equality(const Expr& e) {
    const auto* b = e.as<Binary>();
    return b && (b->op == BinaryOp::Eq || b->op == BinaryOp::Ne);
  }

  Ty binary_op(const Expr& e, const Binary& b) {
    Ty l = visit(*b.lhs);
    Ty r = visit(*b.rhs);
    std::string op = to_string(b.op);
    auto mismatch = [&](const std::string& what) {
      error(e, "operator '" + op + "' expects " + what + ", found " + describe(l) + " and " + describe(r));
      return Ty{};
    };

    if (is_arithmetic(b.op)) {
      if (l.unknown() || r.unknown()) return {};
      if (!l.numeric() || !r.numeric()) return mismatch("arithmetic operands");
      return Ty{l.kind == Ty::Real || r.kind == Ty::Real ? Ty::Real : Ty::Int, {}};
    }
    if (b.op == BinaryOp::Eq || b.op == BinaryOp::Ne) {
      if (is_equality(*b.lhs) || is_equality(*b.rhs)) {
        error(e, "several equalities in one equality constraint");
        return {Ty::Bool, {}};
      }
      if (l.unknown() || r.unknown()) return {Ty::Bool, {}};
      bool ok = (l.numeric() && r.numeric()) || (l.kind == r.kind && l.name == r.name);
      if (!ok) return mismatch("operands of the same type");
      return {Ty::Bool, {}};
    }
    if (is_comparison(b.op)) {
      if (l.unknown() || r.unknown()) return {Ty::Bool, {}};
      if (!l.numeric() || !r.numeric()) return mismatch("arithmetic operands");
      return {Ty::Bool, {}};
    }
    if (is_logical(b.op)) {
      if (l.unknown() || r.unknown()) return {Ty::Bool, {}};
      if (l.kind != Ty::Bool || r.kind != Ty::Bool) return mismatch("boolean operands");
      return {Ty::Bool, {}};
    }
    // intersect
    if (l.unknown() || r.unknown()) return {Ty::Set, {}};
    if (l.kind != Ty::Set || r.kind != Ty::Set) return mismatch("set operands");
    return {Ty::Set, {}};
  }

  const ModelIndex& index_;
  std::vector<Problem>& out_;
  const ExprSite* site_ = nullptr;
};

// ---------------------------------------------------------------------------
// domains

// Constant environment of every integer constant in the model, classes and
// records included, evaluated in declaration order.
void collect_constants(const std::vector<Feature>& fs, ConstEnv& env) {
  for (const auto& f : fs) {
    if (const auto* k = f.as<Constant>()) {
      if (auto v = eval_int(k->value, env)) env[k->name] = *v;
    } else if (const auto* r = f.as<Record>()) {
      collect_constants(r->elements, env);
    }
  }
}

ConstEnv all_constants(const PivotModel& m) {
  ConstEnv env = constant_env(m);
  for (const auto& e : m.elements)
    if (const auto* c = e.as<ClassType>()) collect_constants(c->features, env);
  return env;
}

std::optional<double> eval_number(const Expr& e, const ConstEnv& env) {
  if (const auto* r = e.as<RealLit>()) return r->value;
  if (auto v = eval_int(e, env)) return static_cast<double>(*v);
  if (const auto* u = e.as<Unary>(); u && u->op == UnaryOp::Neg) {
    if (auto v = eval_number(*u->arg, env)) return -*v;
  }
  if (const auto* b = e.as<Binary>(); b && is_arithmetic(b->op)) {
    auto l = eval_number(*b->lhs, env);
    auto r = eval_number(*b->rhs, env);
    if (!l || !r) return std::nullopt;
    switch (b->op) {
      case BinaryOp::Add: return *l + *r;
      case BinaryOp::Sub: return *l - *r;
      case BinaryOp::Mul: return *l * *r;
      default: return *r == 0 ? std::nullopt : std::optional<double>(*l / *r);
    }
  }
  return std::nullopt;
}

void check_variable_domain(const Variable& v, const ConstEnv& env, std::vector<Problem>& out) {
  const auto& where = v.loc.value;
  if (v.array) {
    for (const Expr* d : {&v.array->n, v.array->m ? &*v.array->m : nullptr}) {
      if (!d) continue;
      auto n = eval_int(*d, env);
      if (!n)
        out.push_back(make(Severity::Error, where, "array size of '" + v.name + "' is not a constant expression"));
      else if (*n < 0)
        out.push_back(make(Severity::Error, where, "array size of '" + v.name + "' is negative"));
    }
  }
  if (!v.domain) return;
  if (const auto* i = std::get_if<Interval>(&v.domain->node)) {
    auto lo = eval_number(i->lower, env);
    auto hi = eval_number(i->upper, env);
    if (!lo || !hi) {
      out.push_back(make(Severity::Error, where,
                         "domain bound of '" + v.name + "' is not a constant expression"));
      return;
    }
    if (*lo > *hi)
      out.push_back(make(Severity::Error, where, "empty domain for '" + v.name + "': lower bound exceeds upper bound"));
    else if (*lo == *hi)
      out.push_back(make(Severity::Warning, where, "singleton domain for '" + v.name + "'"));
    return;
  }
  const auto& s = std::get<ExplicitSet>(v.domain->node);
  if (s.values.empty()) {
    out.push_back(make(Severity::Error, where, "empty domain for '" + v.name + "'"));
    return;
  }
  for (const auto& x : s.values) {
    if (x.is<EnumLit>() || eval_number(x, env)) continue;
    out.push_back(make(Severity::Error, x.loc.value ? x.loc.value : where,
                       "domain value of '" + v.name + "' is not a constant expression"));
  }
}

void check_feature_domains(const std::vector<Feature>& fs, const ConstEnv& env, std::vector<Problem>& out) {
  for (const auto& f : fs) {
    if (const auto* v = f.as<Variable>()) check_variable_domain(*v, env, out);
    if (const auto* r = f.as<Record>()) {
      if (r->array) {
        for (const Expr* d : {&r->array->n, r->array->m ? &*r->array->m : nullptr}) {
          if (d && !eval_int(*d, env))
            out.push_back(make(Severity::Error, r->loc.value,
                               "array size of '" + r->name + "' is not a constant expression"));
        }
      }
      check_feature_domains(r->elements, env, out);
    }
  }
}

// ---------------------------------------------------------------------------
// cycles (Tarjan)

class Sccs {
 public:
  explicit Sccs(const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), index_(adj.size(), -1), low_(adj.size(), 0), onStack_(adj.size(), false) {
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (index_[v] < 0) connect(v);
  }

  std::vector<std::vector<std::size_t>> components;

 private:
  void connect(std::size_t v) {
    index_[v] = low_[v] = counter_++;
    stack_.push_back(v);
    onStack_[v] = true;
    for (std::size_t w : adj_[v]) {
      if (index_[w] < 0) {
        connect(w);
        low_[v] = std::min(low_[v], low_[w]);
      } else if (onStack_[w]) {
        low_[v] = std::min(low_[v], index_[w]);
      }
    }
    if (low_[v] != index_[v]) return;
    std::vector<std::size_t> comp;
    std::size_t w;
    do {
      w = stack_.back();
      stack_.pop_back();
      onStack_[w] = false;
      comp.push_back(w);
    } while (w != v);
    components.push_back(std::move(comp));
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<int> index_, low_;
  std::vector<bool> onStack_;
  std::vector<std::size_t> stack_;
  int counter_ = 0;
};

// Walks the cycle inside `comp` starting from its first class in model order,
// producing "A -> B -> A".
std::string cycle_text(const std::vector<std::size_t>& comp, const std::vector<std::vector<std::size_t>>& adj,
                       const std::vector<const ClassType*>& classes) {
  std::set<std::size_t> members(comp.begin(), comp.end());
  std::size_t start = *members.begin();
  std::string text = classes[start]->name;
  std::set<std::size_t> seen{start};
  std::size_t cur = start;
  while (true) {
    std::size_t nxt = start;
    bool found = false;
    for (std::size_t w : adj[cur]) {
      if (w == start) {
        found = true;
        nxt = w;
        break;
      }
    }
    if (!found) {
      for (std::size_t w : adj[cur]) {
        if (members.count(w) && !seen.count(w)) {
          nxt = w;
          found = true;
          break;
        }
      }
    }
    text += " -> " + classes[nxt]->name;
    if (nxt == start || !found) break;
    seen.insert(nxt);
    cur = nxt;
  }
  return text;
}

void report_cycles(const std::vector<std::vector<std::size_t>>& adj, const std::vector<const ClassType*>& classes,
                   const std::string& kind, std::vector<Problem>& out) {
  Sccs sccs(adj);
  std::vector<std::vector<std::size_t>> cyclic;
  for (auto& comp : sccs.components) {
    bool selfLoop = comp.size() == 1 && std::count(adj[comp[0]].begin(), adj[comp[0]].end(), comp[0]) > 0;
    if (comp.size() > 1 || selfLoop) {
      std::sort(comp.begin(), comp.end());
      cyclic.push_back(comp);
    }
  }
  std::sort(cyclic.begin(), cyclic.end());
  for (const auto& comp : cyclic) {
    out.push_back(make(Severity::Error, classes[comp.front()]->loc.value,
                       kind + " cycle: " + cycle_text(comp, adj, classes)));
  }
}

}  // namespace

std::vector<Problem> check_types(const PivotModel& p) {
  std::vector<Problem> out;
  ModelIndex index(p);
  TypeChecker tc(index, out);

  auto expect = [&](const Expr& e, const ExprSite& site, bool ok, const std::string& what, const Ty& found) {
    if (ok || found.unknown()) return;
    out.push_back(make(Severity::Error, e.loc.value ? e.loc.value : site.where,
                       what + ", found " + describe(found)));
  };

  walk_exprs(p, [&](const Expr& e, const ExprSite& site) {
    Ty t = tc.infer(e, site);
    switch (site.role) {
      case ExprRole::Constraint: expect(e, site, t.kind == Ty::Bool, "constraint must be a boolean expression", t); break;
      case ExprRole::IfCond: expect(e, site, t.kind == Ty::Bool, "condition must be a boolean expression", t); break;
      case ExprRole::ForallBound:
      case ExprRole::ArrayDim: expect(e, site, t.kind == Ty::Int, "expected an integer expression", t); break;
      case ExprRole::DomainBound: expect(e, site, t.numeric(), "domain bound must be arithmetic", t); break;
      case ExprRole::DomainValue:
        if (site.owner) {
          Ty want = of_type(site.owner->type, index);
          bool ok = (want.numeric() && t.numeric()) || (want.kind == t.kind && want.name == t.name);
          expect(e, site, ok, "domain value of '" + site.owner->name + "' must be " + describe(want), t);
        }
        break;
      case ExprRole::ConstantValue:
      case ExprRole::LetValue: break;
    }
  });

  // Constants: value must fit the declared type. Object variables take no domain.
  std::function<void(const std::vector<Feature>&)> features = [&](const std::vector<Feature>& fs) {
    for (const auto& f : fs) {
      if (const auto* v = f.as<Variable>()) {
        if (v->domain && index.class_of(*v))
          out.push_back(make(Severity::Error, v->loc.value, "object variable '" + v->name + "' cannot have a domain"));
        if (v->type.kind == TypeRef::Kind::Bool && v->domain)
          out.push_back(make(Severity::Error, v->loc.value, "bool variable '" + v->name + "' cannot have a domain"));
      } else if (const auto* k = f.as<Constant>()) {
        const Expr& x = k->value;
        bool ok = true;
        switch (k->type.kind) {
          case TypeRef::Kind::Int: ok = !x.is<RealLit>() && !x.is<BoolLit>(); break;
          case TypeRef::Kind::Real: ok = !x.is<BoolLit>(); break;
          case TypeRef::Kind::Bool: ok = !x.is<IntLit>() && !x.is<RealLit>(); break;
          case TypeRef::Kind::Named: ok = x.is<EnumLit>(); break;
        }
        if (!ok)
          out.push_back(make(Severity::Error, k->loc.value,
                             "value of constant '" + k->name + "' does not match its type " + k->type.str()));
      } else if (const auto* r = f.as<Record>()) {
        features(r->elements);
      }
    }
  };
  for (const auto& e : p.elements) {
    if (const auto* f = e.as<Feature>()) features({*f});
    if (const auto* c = e.as<ClassType>()) features(c->features);
  }
  return out;
}

std::vector<Problem> check_domains(const PivotModel& p) {
  std::vector<Problem> out;
  ConstEnv env = all_constants(p);
  for (const auto& e : p.elements) {
    if (const auto* f = e.as<Feature>()) check_feature_domains({*f}, env, out);
    if (const auto* c = e.as<ClassType>()) check_feature_domains(c->features, env, out);
  }
  return out;
}

std::vector<Problem> check_cycles(const PivotModel& p) {
  std::vector<Problem> out;
  ModelIndex index(p);
  std::vector<const ClassType*> classes;
  std::map<std::string, std::size_t> id;
  for (const auto& e : p.elements)
    if (const auto* c = e.as<ClassType>()) {
      id.emplace(c->name, classes.size());
      classes.push_back(c);
    }

  std::vector<std::vector<std::size_t>> inherits(classes.size()), composes(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (const auto& s : classes[i]->superTypes)
      if (auto it = id.find(s); it != id.end()) inherits[i].push_back(it->second);
    // Inherited object variables count: a subclass contains them too.
    for (const auto* f : index.features_of(*classes[i])) {
      const auto* v = f->as<Variable>();
      if (!v || v->type.kind != TypeRef::Kind::Named) continue;
      if (auto it = id.find(v->type.name); it != id.end()) composes[i].push_back(it->second);
    }
  }
  report_cycles(inherits, classes, "inheritance", out);
  report_cycles(composes, classes, "composition", out);
  return out;
}

std::vector<Problem> check(const PivotModel& p) {
  std::vector<Problem> out = check_types(p);
  auto d = check_domains(p);
  out.insert(out.end(), d.begin(), d.end());
  auto c = check_cycles(p);
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

}  // namespace cpforge::checker
