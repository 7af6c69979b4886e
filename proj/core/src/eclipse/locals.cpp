#include <cctype>
#include <map>

#include "cpforge/eclipse.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/printer.hpp"
#include "../passes/pass_util.hpp"

namespace cpforge::eclipse {

using namespace pivot;

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

class Localizer {
 public:
  explicit Localizer(const PivotModel& p) : fresh_(taken(p)) {
    for (const auto& e : p.elements)
      if (const auto* v = e.feature_as<Variable>(); v && v->isSet && v->array) setArrays_.insert(v->name);
  }

  std::vector<Statement> body(const std::vector<Statement>& in) {
    std::vector<Statement> out;
    for (const auto& s : in) {
      if (const auto* c = s.as<Constraint>()) {
        std::vector<Statement> lets;
        Expr e = constraint(c->expr, lets);
        for (auto& l : lets) out.push_back(std::move(l));
        out.push_back(Statement{Constraint{std::move(e)}, s.loc});
      } else if (const auto* f = s.as<Forall>()) {
        Forall g = *f;
        g.body = body(f->body);
        out.push_back(Statement{std::move(g), s.loc});
      } else if (const auto* i = s.as<IfStmt>()) {
        IfStmt j = *i;
        j.thenBody = body(i->thenBody);
        if (i->elseBody) j.elseBody = body(*i->elseBody);
        out.push_back(Statement{std::move(j), s.loc});
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

 private:
  static std::set<std::string> taken(const PivotModel& p) {
    std::set<std::string> names = all_declared_names(p);
    std::set<std::string> all = names;
    for (const auto& n : names) all.insert(upper(n));
    return all;
  }

  // `card(S) = k` with a literal k binds k directly: #(S, k).
  static bool direct_card(const Expr& e) {
    const auto* b = e.as<Binary>();
    return b && b->op == BinaryOp::Eq && b->lhs->is<Card>() && b->rhs->is<IntLit>();
  }

  Expr constraint(const Expr& e, std::vector<Statement>& lets) {
    std::map<std::string, std::string> indexLocals;
    std::map<std::pair<std::string, std::string>, std::string> elementLocals;

    auto let = [&](const Expr& value) {
      std::string name = fresh_.next();
      lets.push_back(Statement{Let{name, value}, {}});
      return name;
    };
    auto access = [&](Expr x) {
      auto* ref = x.as<VarRef>();
      if (!ref || ref->path.size() != 1 || ref->path[0].indices.size() != 1) return x;
      const std::string& arr = ref->path[0].name;
      if (!setArrays_.count(arr)) return x;
      std::string key = to_source(ref->path[0].indices[0]);
      auto it = indexLocals.find(key);
      std::string idx = it != indexLocals.end() ? it->second : (indexLocals[key] = let(ref->path[0].indices[0]));
      auto& elem = elementLocals[{arr, idx}];
      if (elem.empty()) elem = let(var_ref(arr, {var_ref(idx)}));
      return var_ref(elem, x.loc);
    };
    auto cards = [&](Expr x) {
      if (!x.is<Card>()) return x;
      return var_ref(let(x), x.loc);
    };

    if (direct_card(e)) {
      Expr out = e;
      auto& c = std::get<Card>(std::get<Binary>(out.node).lhs->node);
      *c.arg = rewrite(*c.arg, access);
      return out;
    }
    Expr out = rewrite(e, access);
    return rewrite(out, cards);
  }

  FreshNames fresh_;
  std::set<std::string> setArrays_;
};

}  // namespace

PivotModel introduce_locals(const PivotModel& p) {
  PivotModel out = p;
  Localizer loc(p);
  passes::detail::for_each_body(out, [&](std::vector<Statement>& b) { b = loc.body(b); });
  return out;
}

}  // namespace cpforge::eclipse
