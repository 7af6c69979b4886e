#include "cpforge/scope.hpp"

#include <algorithm>
#include <type_traits>

namespace cpforge::pivot {

std::optional<Decl> Decl::of(const Feature& f) {
  Decl d;
  if (const auto* v = f.as<Variable>()) {
    d.kind = Kind::Variable;
    d.variable = v;
  } else if (const auto* k = f.as<Constant>()) {
    d.kind = Kind::Constant;
    d.constant = k;
  } else if (const auto* r = f.as<Record>()) {
    d.kind = Kind::Record;
    d.record = r;
  } else {
    return std::nullopt;
  }
  return d;
}

bool Scope::declare(const std::string& name, Decl decl) {
  if (declared_in_innermost(name)) return false;
  frames_.back().emplace_back(name, decl);
  return true;
}

const Decl* Scope::lookup(const std::string& name) const {
  for (auto frame = frames_.rbegin(); frame != frames_.rend(); ++frame)
    for (const auto& [n, d] : *frame)
      if (n == name) return &d;
  return nullptr;
}

bool Scope::declared_in_innermost(const std::string& name) const {
  if (frames_.empty()) return false;
  const auto& f = frames_.back();
  return std::any_of(f.begin(), f.end(), [&](const auto& p) { return p.first == name; });
}

ModelIndex::ModelIndex(const PivotModel& m) {
  for (const auto& e : m.elements) {
    if (const auto* c = e.as<ClassType>()) classes_.emplace(c->name, c);
    if (const auto* t = e.as<EnumType>()) {
      enums_.emplace(t->name, t);
      for (std::size_t i = 0; i < t->literals.size(); ++i)
        literals_.emplace(t->literals[i], std::make_pair(t->name, static_cast<std::int64_t>(i + 1)));
    }
  }
}

const ClassType* ModelIndex::find_class(const std::string& name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : it->second;
}

const EnumType* ModelIndex::find_enum(const std::string& name) const {
  auto it = enums_.find(name);
  return it == enums_.end() ? nullptr : it->second;
}

std::optional<std::pair<std::string, std::int64_t>> ModelIndex::enum_literal(
    const std::string& lit) const {
  auto it = literals_.find(lit);
  if (it == literals_.end()) return std::nullopt;
  return it->second;
}

void ModelIndex::collect(const ClassType& c, std::vector<const Feature*>& out,
                         std::vector<const ClassType*>& seen) const {
  if (std::find(seen.begin(), seen.end(), &c) != seen.end()) return;
  seen.push_back(&c);
  for (const auto& s : c.superTypes)
    if (const auto* super = find_class(s)) collect(*super, out, seen);
  for (const auto& f : c.features) out.push_back(&f);
}

std::vector<const Feature*> ModelIndex::features_of(const ClassType& c) const {
  std::vector<const Feature*> out;
  std::vector<const ClassType*> seen;
  collect(c, out, seen);
  return out;
}

const ClassType* ModelIndex::class_of(const Variable& v) const {
  if (v.type.kind != TypeRef::Kind::Named) return nullptr;
  return find_class(v.type.name);
}

std::optional<Decl> ModelIndex::member(const Decl& container, const std::string& name) const {
  if (container.kind == Decl::Kind::Variable) {
    const auto* cls = class_of(*container.variable);
    if (!cls) return std::nullopt;
    for (const auto* f : features_of(*cls))
      if (f->name() == name) return Decl::of(*f);
    return std::nullopt;
  }
  if (container.kind == Decl::Kind::Record) {
    for (const auto& f : container.record->elements)
      if (f.name() == name) return Decl::of(f);
  }
  return std::nullopt;
}

Resolution resolve(const VarRef& ref, const Scope& scope, const ModelIndex& index) {
  Resolution r;
  const Decl* head = scope.lookup(ref.path.front().name);
  if (!head) {
    r.failedAt = 0;
    return r;
  }
  r.steps.push_back(*head);
  for (std::size_t i = 1; i < ref.path.size(); ++i) {
    auto next = index.member(r.steps.back(), ref.path[i].name);
    if (!next) {
      r.failedAt = i;
      return r;
    }
    r.steps.push_back(*next);
  }
  return r;
}

namespace {

template <class M, class Fn>
class Walker {
  using ElementT = std::conditional_t<std::is_const_v<M>, const ModelElement, ModelElement>;
  using FeatureT = std::conditional_t<std::is_const_v<M>, const Feature, Feature>;
  using StatementT = std::conditional_t<std::is_const_v<M>, const Statement, Statement>;
  using ExprT = std::conditional_t<std::is_const_v<M>, const Expr, Expr>;

 public:
  Walker(M& m, const Fn& fn) : model_(m), index_(m), fn_(fn) {}

  void run() {
    ScopeGuard global(scope_);
    for (const auto& e : model_.elements)
      if (const auto* f = e.template as<Feature>())
        if (auto d = Decl::of(*f)) scope_.declare(f->name(), *d);
    for (ElementT& e : model_.elements) {
      if (auto* f = std::get_if<Feature>(&e.node)) feature(*f);
      if (auto* c = std::get_if<ClassType>(&e.node)) klass(*c);
      if (auto* p = std::get_if<Predicate>(&e.node)) body(p->statements);
    }
  }

 private:
  void emit(ExprT& e, ExprRole role, const std::optional<SourceLocation>& where) {
    ExprSite site{role, scope_, cls_, owner_, e.loc.value ? e.loc.value : where};
    fn_(e, site);
  }

  template <class C>
  void klass(C& c) {
    cls_ = &c;
    ScopeGuard g(scope_);
    for (const auto* f : index_.features_of(c))
      if (auto d = Decl::of(*f)) scope_.declare(f->name(), *d);
    for (FeatureT& f : c.features) feature(f);
    cls_ = nullptr;
  }

  template <class D>
  void dims(D& array, const std::optional<SourceLocation>& where) {
    if (!array) return;
    emit(array->n, ExprRole::ArrayDim, where);
    if (array->m) emit(*array->m, ExprRole::ArrayDim, where);
  }

  void feature(FeatureT& f) {
    if (auto* v = std::get_if<Variable>(&f.node)) {
      owner_ = v;
      dims(v->array, v->loc.value);
      if (v->domain) {
        if (auto* i = std::get_if<Interval>(&v->domain->node)) {
          emit(i->lower, ExprRole::DomainBound, v->loc.value);
          emit(i->upper, ExprRole::DomainBound, v->loc.value);
        } else if (auto* s = std::get_if<ExplicitSet>(&v->domain->node)) {
          for (ExprT& x : s->values) emit(x, ExprRole::DomainValue, v->loc.value);
        }
      }
      owner_ = nullptr;
    } else if (auto* k = std::get_if<Constant>(&f.node)) {
      emit(k->value, ExprRole::ConstantValue, k->loc.value);
    } else if (auto* z = std::get_if<ConstraintZone>(&f.node)) {
      body(z->statements, z->loc.value);
    } else if (auto* r = std::get_if<Record>(&f.node)) {
      dims(r->array, r->loc.value);
      ScopeGuard g(scope_);
      for (const auto& x : r->elements)
        if (auto d = Decl::of(x)) scope_.declare(x.name(), *d);
      for (FeatureT& x : r->elements) feature(x);
    }
  }

  template <class B>
  void body(B& stmts, const std::optional<SourceLocation>& where = {}) {
    ScopeGuard g(scope_);
    for (StatementT& s : stmts) {
      const auto& loc = s.loc.value ? s.loc.value : where;
      if (auto* c = std::get_if<Constraint>(&s.node)) {
        emit(c->expr, ExprRole::Constraint, loc);
      } else if (auto* f = std::get_if<Forall>(&s.node)) {
        emit(f->lower, ExprRole::ForallBound, loc);
        emit(f->upper, ExprRole::ForallBound, loc);
        ScopeGuard inner(scope_);
        scope_.declare(f->index, Decl{Decl::Kind::Index});
        body(f->body, loc);
      } else if (auto* i = std::get_if<IfStmt>(&s.node)) {
        emit(i->cond, ExprRole::IfCond, loc);
        body(i->thenBody, loc);
        if (i->elseBody) body(*i->elseBody, loc);
      } else if (auto* l = std::get_if<Let>(&s.node)) {
        emit(l->value, ExprRole::LetValue, loc);
        Decl d{Decl::Kind::Local};
        d.localValue = &l->value;
        scope_.declare(l->name, d);
      }
    }
  }

  M& model_;
  ModelIndex index_;
  Scope scope_;
  const Fn& fn_;
  const ClassType* cls_ = nullptr;
  const Variable* owner_ = nullptr;
};

}  // namespace

void walk_exprs(PivotModel& m, const std::function<void(Expr&, const ExprSite&)>& fn) {
  Walker<PivotModel, std::function<void(Expr&, const ExprSite&)>>(m, fn).run();
}

void walk_exprs(const PivotModel& m,
                const std::function<void(const Expr&, const ExprSite&)>& fn) {
  Walker<const PivotModel, std::function<void(const Expr&, const ExprSite&)>>(m, fn).run();
}

}  // namespace cpforge::pivot
