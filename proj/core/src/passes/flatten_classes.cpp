#include <set>

#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/scope.hpp"

namespace cpforge::passes {

using namespace pivot;

namespace {

class ClassFlattener {
 public:
  explicit ClassFlattener(const PivotModel& m) : index_(m) {}

  // Class features become record elements; object variables recurse.
  std::vector<Feature> expand(const std::vector<const Feature*>& features) {
    std::vector<Feature> out;
    for (const Feature* f : features) {
      const auto* v = f->as<Variable>();
      if (v && v->type.kind == TypeRef::Kind::Named && !index_.find_enum(v->type.name)) {
        out.push_back(Feature{to_record(*v)});
      } else {
        out.push_back(duplicate(*f));
      }
    }
    return out;
  }

 private:
  Record to_record(const Variable& v) {
    const ClassType* cls = index_.class_of(v);
    if (!cls) {
      throw PassError(PassError::Kind::InternalInvariant,
                      "object variable '" + v.name + "' has undeclared class '" + v.type.name + "'", v.loc.value);
    }
    if (active_.count(cls->name)) {
      throw PassError(PassError::Kind::InternalInvariant, "composition cycle through class '" + cls->name + "'",
                      v.loc.value);
    }
    active_.insert(cls->name);
    Record r;
    r.name = v.name;
    r.array = v.array;
    r.loc = v.loc;
    r.elements = expand(index_.features_of(*cls));
    active_.erase(cls->name);
    return r;
  }

  ModelIndex index_;
  std::set<std::string> active_;
};

}  // namespace

PassResult flatten_classes(const PivotModel& p) {
  PassResult out;
  out.model.name = p.name;
  const ClassType* main = p.main_class();
  if (!main) {
    for (const auto& e : p.elements)
      if (!e.as<ClassType>()) out.model.elements.push_back(e);
    return out;
  }

  std::set<std::string> globals;
  for (const auto& e : p.elements)
    if (!e.as<ClassType>()) globals.insert(e.name());

  ClassFlattener flattener(p);
  ModelIndex index(p);
  for (const auto& e : p.elements) {
    const auto* c = e.as<ClassType>();
    if (!c) {
      out.model.elements.push_back(e);
      continue;
    }
    if (c != main) continue;
    for (auto& f : flattener.expand(index.features_of(*c))) {
      if (globals.count(f.name())) {
        throw PassError(PassError::Kind::Unsupported,
                        "feature '" + f.name() + "' of main class '" + c->name + "' clashes with a global name",
                        c->loc.value);
      }
      out.model.elements.push_back(element(std::move(f)));
    }
  }
  return out;
}

}  // namespace cpforge::passes
