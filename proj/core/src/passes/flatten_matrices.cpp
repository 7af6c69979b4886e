#include <set>

#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/scope.hpp"

namespace cpforge::passes {

using namespace pivot;

namespace {

// Records a NameMap entry for every matrix variable reachable from the model
// roots; `indices` counts the array indices that precede it in a cell key.
class MatrixCells {
 public:
  MatrixCells(const PivotModel& p, NameMap& map) : index_(p), map_(map) {}

  void roots(const PivotModel& p) {
    for (const auto& e : p.elements) {
      if (const auto* f = e.as<Feature>()) visit(*f, "", 0);
    }
    if (const auto* main = p.main_class())
      for (const auto* f : index_.features_of(*main)) visit(*f, "", 0);
  }

 private:
  void visit(const Feature& f, const std::string& prefix, std::size_t indices) {
    std::string path = prefix.empty() ? f.name() : prefix + "." + f.name();
    if (const auto* r = f.as<Record>()) {
      for (const auto& x : r->elements) visit(x, path, indices + (r->array ? 1 : 0));
      return;
    }
    const auto* v = f.as<Variable>();
    if (!v) return;
    if (const auto* cls = index_.class_of(*v)) {
      if (active_.count(cls->name)) return;
      active_.insert(cls->name);
      for (const auto* x : index_.features_of(*cls)) visit(*x, path, indices + (v->array ? 1 : 0));
      active_.erase(cls->name);
      return;
    }
    if (v->array && v->array->m) map_.entries.push_back({path, path, indices, true, {v->array->n, *v->array->m}});
  }

  ModelIndex index_;
  NameMap& map_;
  std::set<std::string> active_;
};

void flatten_decls(std::vector<Feature>& fs) {
  for (auto& f : fs) {
    if (auto* v = f.as<Variable>(); v && v->array && v->array->m) {
      v->array = ArrayDims{product({v->array->n, *v->array->m}), std::nullopt};
    } else if (auto* r = f.as<Record>()) {
      flatten_decls(r->elements);
    }
  }
}

}  // namespace

PassResult flatten_matrices(const PivotModel& p) {
  PassResult out{p, {}, {}};
  MatrixCells(p, out.names).roots(p);

  // Accesses are rewritten against the input model, whose declarations still
  // carry both dimensions.
  ModelIndex index(p);
  walk_exprs(out.model, [&](Expr& root, const ExprSite& site) {
    root = rewrite(root, [&](Expr x) {
      auto* ref = x.as<VarRef>();
      if (!ref) return x;
      Resolution res = resolve(*ref, site.scope, index);
      for (std::size_t i = 0; i < res.steps.size(); ++i) {
        const Decl& d = res.steps[i];
        auto& step = ref->path[i];
        if (d.kind != Decl::Kind::Variable || !d.variable->array || !d.variable->array->m) continue;
        if (step.indices.size() != 2) continue;
        Expr flat = linearize(step.indices, {d.variable->array->n, *d.variable->array->m});
        step.indices.clear();
        step.indices.push_back(std::move(flat));
      }
      return x;
    });
  });

  for (auto& e : out.model.elements) {
    if (auto* f = e.as<Feature>()) {
      std::vector<Feature> one{std::move(*f)};
      flatten_decls(one);
      *f = std::move(one.front());
    }
    if (auto* c = e.as<ClassType>()) flatten_decls(c->features);
  }
  return out;
}

}  // namespace cpforge::passes
