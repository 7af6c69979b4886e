#include <map>

#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"

namespace cpforge::passes {

using namespace pivot;

namespace {

class EnumRemover {
 public:
  explicit EnumRemover(const PivotModel& p) {
    for (const auto& e : p.elements) {
      if (const auto* t = e.as<EnumType>()) {
        sizes_[t->name] = static_cast<std::int64_t>(t->literals.size());
        for (std::size_t i = 0; i < t->literals.size(); ++i)
          positions_[{t->name, t->literals[i]}] = static_cast<std::int64_t>(i + 1);
      }
    }
  }

  bool is_enum(const TypeRef& t) const { return t.kind == TypeRef::Kind::Named && sizes_.count(t.name); }

  Expr expr(const Expr& e) const {
    return rewrite(e, [&](Expr x) {
      if (const auto* l = x.as<EnumLit>()) return int_lit(positions_.at({l->enumName, l->literal}), x.loc);
      return x;
    });
  }

  void features(std::vector<Feature>& fs) const {
    for (auto& f : fs) {
      if (auto* v = f.as<Variable>()) {
        if (is_enum(v->type)) {
          if (!v->domain) v->domain = interval(int_lit(1), int_lit(sizes_.at(v->type.name)));
          v->type = TypeRef::int_type();
        }
      } else if (auto* k = f.as<Constant>()) {
        if (is_enum(k->type)) k->type = TypeRef::int_type();
      } else if (auto* r = f.as<Record>()) {
        features(r->elements);
      }
    }
  }

 private:
  std::map<std::string, std::int64_t> sizes_;
  std::map<std::pair<std::string, std::string>, std::int64_t> positions_;
};

}  // namespace

PassResult remove_enums(const PivotModel& p) {
  PassResult out;
  EnumRemover remover(p);
  out.model.name = p.name;
  for (const auto& e : p.elements)
    if (!e.as<EnumType>()) out.model.elements.push_back(e);

  for (auto& e : out.model.elements) {
    if (auto* f = e.as<Feature>()) {
      std::vector<Feature> one{std::move(*f)};
      remover.features(one);
      *f = std::move(one.front());
    }
    if (auto* c = e.as<ClassType>()) remover.features(c->features);
  }
  for_each_expr(out.model, [&](Expr& x) { x = remover.expr(x); });
  return out;
}

}  // namespace cpforge::passes
