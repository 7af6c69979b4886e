#include "pass_util.hpp"

namespace cpforge::passes::detail {

using namespace pivot;

namespace {

void bodies_in(std::vector<Feature>& fs, const std::function<void(std::vector<Statement>&)>& fn) {
  for (auto& f : fs) {
    if (auto* z = f.as<ConstraintZone>()) fn(z->statements);
    if (auto* r = f.as<Record>()) bodies_in(r->elements, fn);
  }
}

void constants_in(const std::vector<Feature>& fs, ConstEnv& env) {
  for (const auto& f : fs) {
    if (const auto* k = f.as<Constant>()) {
      if (auto v = eval_int(k->value, env)) env[k->name] = *v;
    }
    if (const auto* r = f.as<Record>()) constants_in(r->elements, env);
  }
}

}  // namespace

void for_each_body(PivotModel& m, const std::function<void(std::vector<Statement>&)>& fn) {
  for (auto& e : m.elements) {
    if (auto* f = e.as<Feature>()) {
      if (auto* z = f->as<ConstraintZone>()) fn(z->statements);
      if (auto* r = f->as<Record>()) bodies_in(r->elements, fn);
    }
    if (auto* c = e.as<ClassType>()) bodies_in(c->features, fn);
    if (auto* p = e.as<Predicate>()) fn(p->statements);
  }
}

ConstEnv scoped_constants(const PivotModel& m) {
  ConstEnv env = constant_env(m);
  for (const auto& e : m.elements) {
    if (const auto* c = e.as<ClassType>()) constants_in(c->features, env);
    if (const auto* f = e.as<Feature>())
      if (const auto* r = f->as<Record>()) constants_in(r->elements, env);
  }
  return env;
}

const std::optional<SourceLocation>& loc_of(const Expr& e) { return e.loc.value; }

}  // namespace cpforge::passes::detail
