#include "cpforge/inject.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cpforge/pivot_ops.hpp"
#include "cpforge/scope.hpp"

namespace cpforge::frontend {

using namespace pivot;

namespace {

SourceLocation where_of(const NodeLoc& loc) { return loc.value.value_or(SourceLocation{}); }

[[noreturn]] void duplicate_name(const std::string& name, const NodeLoc& loc, const std::string& scope) {
  throw InjectError(InjectError::Kind::DuplicateName, name, where_of(loc),
                    "duplicate name '" + name + "' in " + scope);
}

[[noreturn]] void unresolved(const std::string& name, const NodeLoc& loc) {
  throw InjectError(InjectError::Kind::UnresolvedName, name, where_of(loc),
                    "unresolved name '" + name + "'");
}

const NodeLoc& feature_loc(const Feature& f) {
  return std::visit([](const auto& x) -> const NodeLoc& { return x.loc; }, f.node);
}

void unique_features(const std::vector<Feature>& features, std::set<std::string> taken,
                     const std::string& scope) {
  for (const auto& f : features) {
    if (!taken.insert(f.name()).second) duplicate_name(f.name(), feature_loc(f), scope);
    if (const auto* r = f.as<Record>()) unique_features(r->elements, {}, "record " + r->name);
  }
}

void check_declarations(const PivotModel& m, const ModelIndex& index) {
  std::set<std::string> top;
  for (const auto& e : m.elements) {
    const NodeLoc* loc = nullptr;
    NodeLoc none;
    std::visit(overloaded{
                   [&](const EnumType& t) { loc = &t.loc; },
                   [&](const ClassType& c) { loc = &c.loc; },
                   [&](const Feature& f) { loc = &feature_loc(f); },
                   [&](const Predicate&) { loc = &none; },
               },
               e.node);
    if (!top.insert(e.name()).second) duplicate_name(e.name(), *loc, "model");
  }

  std::size_t classes = 0, mains = 0;
  for (const auto& e : m.elements) {
    if (const auto* t = e.as<EnumType>()) {
      std::set<std::string> lits;
      for (const auto& l : t->literals)
        if (!lits.insert(l).second) duplicate_name(l, t->loc, "enum " + t->name);
    } else if (const auto* c = e.as<ClassType>()) {
      ++classes;
      if (c->isMain) ++mains;
      for (const auto& s : c->superTypes)
        if (!index.find_class(s)) unresolved(s, c->loc);
      std::set<std::string> inherited;
      for (const auto* f : index.features_of(*c)) inherited.insert(f->name());
      for (const auto& f : c->features) inherited.erase(f.name());
      unique_features(c->features, inherited, "class " + c->name);
    } else if (const auto* f = e.as<Feature>()) {
      if (const auto* r = f->as<Record>()) unique_features(r->elements, {}, "record " + r->name);
    }
  }
  if (classes > 0 && mains != 1) {
    throw InjectError(InjectError::Kind::MainClass, "", {},
                      "expected exactly one main class, found " + std::to_string(mains));
  }
}

void check_type(const TypeRef& t, const NodeLoc& loc, const ModelIndex& index, bool allowClass) {
  if (t.kind != TypeRef::Kind::Named) return;
  if (index.find_enum(t.name)) return;
  if (allowClass && index.find_class(t.name)) return;
  unresolved(t.name, loc);
}

void check_types(const std::vector<Feature>& features, const ModelIndex& index) {
  for (const auto& f : features) {
    if (const auto* v = f.as<Variable>()) check_type(v->type, v->loc, index, true);
    if (const auto* k = f.as<Constant>()) check_type(k->type, k->loc, index, false);
    if (const auto* r = f.as<Record>()) check_types(r->elements, index);
  }
}

// Resolves one reference, turning enum-literal spellings into EnumLit.
Expr resolve_ref(Expr e, const ExprSite& site, const ModelIndex& index) {
  const auto* ref = e.as<VarRef>();
  if (!ref) return e;
  const auto& head = ref->path.front();
  if (!site.scope.lookup(head.name)) {
    if (ref->path.size() == 1 && head.indices.empty()) {
      if (auto lit = index.enum_literal(head.name)) return enum_lit(lit->first, head.name, e.loc);
    }
    // Qualified literal `Enum.lit`.
    if (ref->path.size() == 2 && head.indices.empty() && ref->path[1].indices.empty()) {
      if (const auto* t = index.find_enum(head.name)) {
        for (const auto& l : t->literals)
          if (l == ref->path[1].name) return enum_lit(t->name, l, e.loc);
        unresolved(ref->path[1].name, e.loc);
      }
    }
    unresolved(head.name, e.loc);
  }
  Resolution r = resolve(*ref, site.scope, index);
  if (!r.ok()) unresolved(ref->path[*r.failedAt].name, e.loc);
  return e;
}

}  // namespace

PivotModel inject(const ModelAst& model, const DataAst& data) {
  PivotModel m;
  for (const auto& d : data.decls) {
    std::visit(overloaded{
                   [&](const EnumType& t) { m.elements.push_back(ModelElement{t}); },
                   [&](const Constant& k) { m.elements.push_back(element(Feature{k})); },
               },
               d);
  }
  for (const auto& d : model.decls) {
    std::visit([&](const auto& x) { m.elements.push_back(ModelElement{x}); }, d);
  }

  ModelIndex index(m);
  check_declarations(m, index);
  for (const auto& e : m.elements) {
    if (const auto* f = e.as<Feature>()) check_types({*f}, index);
    if (const auto* c = e.as<ClassType>()) check_types(c->features, index);
  }

  walk_exprs(m, [&](Expr& root, const ExprSite& site) {
    root = rewrite(root, [&](Expr x) { return resolve_ref(std::move(x), site, index); });
  });

  if (const auto* main = m.main_class())
    m.name = main->name;
  else if (data.modelName)
    m.name = *data.modelName;
  else
    m.name = "model";
  return m;
}

PivotModel inject(const SourceAst& src) { return inject(src.model, src.data); }

PivotModel load(std::string_view modelText, std::string_view dataText, const std::string& modelFile,
                const std::string& dataFile) {
  SourceAst src{parse_data(dataText, dataFile), parse_model(modelText, modelFile)};
  return inject(src);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PivotModel load_files(const std::filesystem::path& model, const std::filesystem::path& data) {
  return load(read_file(model), read_file(data), model.string(), data.string());
}

SourceText extract_source(const PivotModel& p) { return print_model(p); }

}  // namespace cpforge::frontend
