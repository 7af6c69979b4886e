#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "cpforge/eclipse.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/printer.hpp"

namespace cpforge::eclipse {

using namespace pivot;

Term Term::infix(std::string op, Term a, Term b) {
  Term t{Kind::Infix, 0, std::move(op), {}};
  t.args.push_back(std::move(a));
  t.args.push_back(std::move(b));
  return t;
}

namespace {

const std::string kList = "L";

PassError unsupported(const std::string& what, const NodeLoc& loc = {}) {
  return PassError(PassError::Kind::UnsupportedConstruct, what + " is not supported by the eclipse target", loc.value);
}

// Pivot identifiers become upper-case target variables; distinct pivot names
// that collide after upper-casing get a numeric suffix.
class Namer {
 public:
  Namer() { used_.insert(kList); }

  const std::string& operator()(const std::string& pivotName) {
    auto it = names_.find(pivotName);
    if (it != names_.end()) return it->second;
    std::string base;
    for (char c : pivotName) base += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    std::string cand = base;
    for (int k = 2; used_.count(cand); ++k) cand = base + "_" + std::to_string(k);
    used_.insert(cand);
    return names_[pivotName] = cand;
  }

 private:
  std::map<std::string, std::string> names_;
  std::set<std::string> used_;
};

// One visible name in the order param lists use.
struct Visible {
  std::vector<std::string> names;
  std::set<std::string> lookup;

  void add(const std::string& n) {
    if (lookup.insert(n).second) names.push_back(n);
  }
};

class Translator {
 public:
  explicit Translator(const PivotModel& p) : p_(p), env_(constant_env(p)) {}

  EclModel run() {
    gate();
    Predicate pred;
    pred.name = p_.name;
    if (!pred.name.empty())
      pred.name[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(pred.name[0])));
    pred.params.push_back(kList);

    Visible top;
    top.add(kList);
    std::vector<Atom> decls;
    std::vector<std::string> decisionVars;
    bool anySet = false, anyInt = false;
    for (const auto& e : p_.elements) {
      const auto* f = e.as<Feature>();
      if (!f) continue;
      if (const auto* k = f->as<Constant>()) {
        if (k->type.kind == TypeRef::Kind::Real) throw unsupported("real constant '" + k->name + "'", k->loc);
        auto v = env_.find(k->name);
        if (v == env_.end()) throw unsupported("non-integer constant '" + k->name + "'", k->loc);
        pred.body.push_back(Atom{ConstBind{name_(k->name), v->second}});
        top.add(name_(k->name));
      } else if (const auto* v = f->as<Variable>()) {
        decls.push_back(declare(*v));
        decisionVars.push_back(name_(v->name));
        top.add(name_(v->name));
        (v->isSet ? anySet : anyInt) = true;
        if (v->isSet) sets_.insert(v->name);
        if (v->isSet && v->array) setArrays_.insert(v->name);
      }
    }
    if (anySet && anyInt) throw unsupported("mixing set and integer decision variables");
    for (auto& d : decls) pred.body.push_back(std::move(d));
    if (!decisionVars.empty()) pred.body.push_back(Atom{ListAlias{kList, decisionVars}});
    listArray_ = setArrays_.size() == 1 && decisionVars.size() == 1 ? *setArrays_.begin() : "";

    for (const auto& e : p_.elements)
      if (const auto* z = e.feature_as<ConstraintZone>())
        for (auto& a : statements(z->statements, top)) pred.body.push_back(std::move(a));
    for (const auto& e : p_.elements)
      if (const auto* pr = e.as<pivot::Predicate>())
        for (auto& a : statements(pr->statements, top)) pred.body.push_back(std::move(a));

    pred.body.push_back(Atom{LabelSets{kList, !anyInt}});
    EclModel m;
    m.predicates.push_back(std::move(pred));
    return m;
  }

 private:
  void gate() const {
    for (const auto& e : p_.elements) {
      if (const auto* c = e.as<ClassType>()) throw unsupported("class '" + c->name + "'", c->loc);
      if (const auto* t = e.as<EnumType>()) throw unsupported("enum '" + t->name + "'", t->loc);
      if (const auto* r = e.feature_as<Record>()) throw unsupported("record '" + r->name + "'", r->loc);
      if (const auto* v = e.feature_as<Variable>(); v && v->array && v->array->m)
        throw unsupported("matrix '" + v->name + "'", v->loc);
    }
  }

  std::int64_t fold(const Expr& e, const NodeLoc& loc) const {
    auto v = eval_int(e, env_);
    if (!v) throw unsupported("non-constant bound '" + to_source(e) + "'", loc);
    return *v;
  }

  Atom declare(const Variable& v) {
    if (v.type.kind == TypeRef::Kind::Real) throw unsupported("real variable '" + v.name + "'", v.loc);
    if (v.type.kind == TypeRef::Kind::Named) throw unsupported("object variable '" + v.name + "'", v.loc);
    std::optional<std::int64_t> size;
    if (v.array) size = fold(v.array->n, v.loc);
    std::int64_t lo = 0, hi = 1;
    std::vector<std::int64_t> values;
    if (v.domain) {
      if (const auto* i = std::get_if<Interval>(&v.domain->node)) {
        lo = fold(i->lower, v.loc);
        hi = fold(i->upper, v.loc);
      } else {
        for (const auto& x : std::get<ExplicitSet>(v.domain->node).values) values.push_back(fold(x, v.loc));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (v.isSet) {
          if (values.empty() || values.back() - values.front() + 1 != static_cast<std::int64_t>(values.size()))
            throw unsupported("set domain with gaps on '" + v.name + "'", v.loc);
          lo = values.front();
          hi = values.back();
          values.clear();
        }
      }
    } else if (v.type.kind != TypeRef::Kind::Bool) {
      throw unsupported("unbounded variable '" + v.name + "'", v.loc);
    }
    if (v.isSet) return Atom{IntsetsDecl{name_(v.name), size, lo, hi}};
    return Atom{IntDecl{name_(v.name), size, lo, hi, values}};
  }

  // ---- statements ---------------------------------------------------------

  std::vector<Atom> statements(const std::vector<Statement>& body, const Visible& outer) {
    std::vector<Atom> out;
    Visible scope = outer;
    for (const auto& s : body) {
      if (const auto* c = s.as<Constraint>()) {
        constraint(c->expr, s.loc, out);
      } else if (const auto* f = s.as<Forall>()) {
        ForLoop loop;
        loop.iter = name_(f->index);
        loop.from = term(f->lower);
        loop.to = term(f->upper);
        Visible inner = scope;
        inner.add(loop.iter);
        loop.body = statements(f->body, inner);
        std::set<std::string> needed;
        for (const auto& n : free_names(loop.body))
          if (n != loop.iter) needed.insert(n);
        for (const auto& n : scope.names)
          if (needed.count(n)) loop.params.push_back(n);
        out.push_back(Atom{std::move(loop)});
      } else if (const auto* l = s.as<Let>()) {
        out.push_back(let(*l, s.loc));
        scope.add(name_(l->name));
      } else {
        throw unsupported("if statement", s.loc);
      }
    }
    return out;
  }

  Atom let(const Let& l, const NodeLoc& loc) {
    const std::string& out = name_(l.name);
    if (const auto* c = l.value.as<Card>()) return Atom{CardBind{term(*c->arg), Term::var(out)}};
    if (const auto* r = l.value.as<VarRef>(); r && r->path.size() == 1 && setArrays_.count(r->path[0].name)) {
      if (r->path[0].indices.size() != 1) throw unsupported("set array '" + r->path[0].name + "' without index", loc);
      sets_.insert(l.name);
      std::string list = r->path[0].name == listArray_ ? kList : name_(r->path[0].name);
      return Atom{NthCall{out, term(r->path[0].indices[0]), list}};
    }
    return Atom{IsBind{out, term(l.value)}};
  }

  void constraint(const Expr& e, const NodeLoc& loc, std::vector<Atom>& out) {
    if (const auto* b = e.as<BoolLit>()) {
      if (!b->value) out.push_back(Atom{ConstraintAtom{Term::call("fail", {})}});
      return;
    }
    if (const auto* b = e.as<Binary>(); b && b->op == BinaryOp::Eq && b->rhs->is<IntLit>()) {
      if (const auto* c = b->lhs->as<Card>()) {
        out.push_back(Atom{CardBind{term(*c->arg), Term::number(b->rhs->as<IntLit>()->value)}});
        return;
      }
    }
    (void)loc;
    out.push_back(Atom{ConstraintAtom{term(e)}});
  }

  // ---- expressions --------------------------------------------------------

  bool is_set(const Expr& e) const {
    if (const auto* r = e.as<VarRef>()) return r->path.size() == 1 && sets_.count(r->path[0].name);
    if (const auto* b = e.as<Binary>()) return b->op == BinaryOp::Intersect;
    return false;
  }

  Term term(const Expr& e) {
    return std::visit(
        overloaded{
            [&](const IntLit& i) { return Term::number(i.value); },
            [&](const BoolLit& b) { return Term::number(b.value ? 1 : 0); },
            [&](const RealLit&) -> Term { throw unsupported("real literal", e.loc); },
            [&](const EnumLit& l) -> Term { throw unsupported("enum literal '" + l.literal + "'", e.loc); },
            [&](const VarRef& r) -> Term {
              if (r.path.size() != 1) throw unsupported("access path '" + to_source(e) + "'", e.loc);
              const AccessStep& step = r.path[0];
              if (step.indices.empty()) return Term::var(name_(step.name));
              if (setArrays_.count(step.name)) throw unsupported("unlocalised set array access", e.loc);
              Term t{Term::Kind::Subscript, 0, name_(step.name), {}};
              for (const auto& x : step.indices) t.args.push_back(term(x));
              return t;
            },
            [&](const Unary& u) {
              if (u.op == UnaryOp::Neg) return Term::call("-", {term(*u.arg)});
              return Term::call("neg", {term(*u.arg)});
            },
            [&](const Binary& b) -> Term {
              if (is_comparison(b.op) && (is_set(*b.lhs) || is_set(*b.rhs))) {
                if (b.op != BinaryOp::Eq) throw unsupported("set comparison '" + to_source(e) + "'", e.loc);
                return Term::infix("sameset", term(*b.lhs), term(*b.rhs));
              }
              return Term::infix(op(b.op), term(*b.lhs), term(*b.rhs));
            },
            [&](const Card&) -> Term { throw unsupported("nested cardinality '" + to_source(e) + "'", e.loc); },
        },
        e.node);
  }

  static std::string op(BinaryOp o) {
    switch (o) {
      case BinaryOp::Add: return "+";
      case BinaryOp::Sub: return "-";
      case BinaryOp::Mul: return "*";
      case BinaryOp::Div: return "//";
      case BinaryOp::Eq: return "#=";
      case BinaryOp::Ne: return "#\\=";
      case BinaryOp::Lt: return "#<";
      case BinaryOp::Le: return "#=<";
      case BinaryOp::Gt: return "#>";
      case BinaryOp::Ge: return "#>=";
      case BinaryOp::And: return "and";
      case BinaryOp::Or: return "or";
      case BinaryOp::Implies: return "=>";
      case BinaryOp::Intersect: return "/\\";
    }
    return "?";
  }

  const PivotModel& p_;
  ConstEnv env_;
  Namer name_;
  std::set<std::string> sets_;        // pivot names of set-valued variables and locals
  std::set<std::string> setArrays_;
  std::string listArray_;              // the set array L aliases, if it is the only one
};

void collect_free(const Term& t, const std::set<std::string>& bound, std::vector<std::string>& out,
                  std::set<std::string>& seen) {
  auto use = [&](const std::string& n) {
    if (!bound.count(n) && seen.insert(n).second) out.push_back(n);
  };
  if (t.kind == Term::Kind::Var || t.kind == Term::Kind::Subscript) use(t.name);
  for (const auto& a : t.args) collect_free(a, bound, out, seen);
}

void collect_free(const std::vector<Atom>& atoms, std::set<std::string> bound, std::vector<std::string>& out,
                  std::set<std::string>& seen) {
  auto use = [&](const std::string& n) {
    if (!bound.count(n) && seen.insert(n).second) out.push_back(n);
  };
  for (const auto& a : atoms) {
    std::visit(overloaded{
                   [&](const ConstBind& c) { bound.insert(c.name); },
                   [&](const IntsetsDecl& d) { bound.insert(d.listVar); },
                   [&](const IntDecl& d) { bound.insert(d.var); },
                   [&](const ListAlias& l) {
                     for (const auto& t : l.targets) use(t);
                     bound.insert(l.name);
                   },
                   [&](const ForLoop& f) {
                     collect_free(f.from, bound, out, seen);
                     collect_free(f.to, bound, out, seen);
                     auto inner = bound;
                     inner.insert(f.iter);
                     collect_free(f.body, inner, out, seen);
                   },
                   [&](const IsBind& b) {
                     collect_free(b.expr, bound, out, seen);
                     bound.insert(b.var);
                   },
                   [&](const NthCall& n) {
                     collect_free(n.index, bound, out, seen);
                     use(n.listVar);
                     bound.insert(n.outVar);
                   },
                   [&](const CardBind& c) {
                     collect_free(c.setExpr, bound, out, seen);
                     if (c.out.kind == Term::Kind::Var) bound.insert(c.out.name);
                   },
                   [&](const ConstraintAtom& c) { collect_free(c.expr, bound, out, seen); },
                   [&](const LabelSets& l) { use(l.listVar); },
               },
               a.node);
  }
}

// Zones declared directly in the model come before the loop zones that
// record flattening produced (every statement a loop over the zone's name).
PivotModel order_zones(const PivotModel& p) {
  PivotModel out;
  out.name = p.name;
  std::vector<ModelElement> loops;
  for (const auto& e : p.elements) {
    const auto* z = e.feature_as<ConstraintZone>();
    bool fromRecord = z && !z->statements.empty() &&
                      std::all_of(z->statements.begin(), z->statements.end(), [&](const Statement& s) {
                        const auto* f = s.as<Forall>();
                        return f && f->index == z->name;
                      });
    (fromRecord ? loops : out.elements).push_back(e);
  }
  for (auto& e : loops) out.elements.push_back(std::move(e));
  return out;
}

}  // namespace

std::vector<std::string> free_names(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_free(atoms, {}, out, seen);
  return out;
}

EclModel to_eclipse(const PivotModel& p) { return Translator(introduce_locals(order_zones(p))).run(); }

}  // namespace cpforge::eclipse
