#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpforge/pivot.hpp"

namespace cpforge::pivot {

// What a name resolves to.
struct Decl {
  enum class Kind { Variable, Constant, Record, Index, Local };

  Kind kind = Kind::Index;
  const Variable* variable = nullptr;
  const Constant* constant = nullptr;
  const Record* record = nullptr;
  const Expr* localValue = nullptr;

  static std::optional<Decl> of(const Feature& f);
};

// Stack of name tables. Lookup searches innermost-out; declarations go into
// the innermost table.
class Scope {
 public:
  void push() { frames_.emplace_back(); }
  void pop() { frames_.pop_back(); }
  std::size_t depth() const { return frames_.size(); }

  // Returns false if the innermost table already holds `name`.
  bool declare(const std::string& name, Decl decl);
  const Decl* lookup(const std::string& name) const;
  bool declared_in_innermost(const std::string& name) const;

 private:
  std::vector<std::vector<std::pair<std::string, Decl>>> frames_;
};

class ScopeGuard {
 public:
  explicit ScopeGuard(Scope& s) : scope_(s) { scope_.push(); }
  ~ScopeGuard() { scope_.pop(); }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  Scope& scope_;
};

// Type-level lookups over a model: classes, enums, enum literals and the
// inherited feature sets of classes.
class ModelIndex {
 public:
  explicit ModelIndex(const PivotModel& m);

  const ClassType* find_class(const std::string& name) const;
  const EnumType* find_enum(const std::string& name) const;

  // Enum name and 1-based position of a literal, if some enum declares it.
  std::optional<std::pair<std::string, std::int64_t>> enum_literal(const std::string& lit) const;

  // All features of a class, supertype features first (depth-first over
  // superTypes), each class visited once so cyclic hierarchies terminate.
  std::vector<const Feature*> features_of(const ClassType& c) const;

  // Class of an object variable, or null.
  const ClassType* class_of(const Variable& v) const;

  // Member named `name` of the object/record that `container` denotes.
  std::optional<Decl> member(const Decl& container, const std::string& name) const;

 private:
  void collect(const ClassType& c, std::vector<const Feature*>& out,
               std::vector<const ClassType*>& seen) const;

  std::map<std::string, const ClassType*> classes_;
  std::map<std::string, const EnumType*> enums_;
  std::map<std::string, std::pair<std::string, std::int64_t>> literals_;
};

// Resolution of an access path: one Decl per step. `failedAt` is the index
// of the first step that could not be resolved, or nullopt on success.
struct Resolution {
  std::vector<Decl> steps;
  std::optional<std::size_t> failedAt;

  bool ok() const { return !failedAt.has_value(); }
  const Decl& last() const { return steps.back(); }
};

Resolution resolve(const VarRef& ref, const Scope& scope, const ModelIndex& index);

// Where an expression root sits.
enum class ExprRole {
  Constraint,
  ForallBound,
  IfCond,
  LetValue,
  DomainBound,
  DomainValue,
  ArrayDim,
  ConstantValue,
};

struct ExprSite {
  ExprRole role;
  const Scope& scope;
  const ClassType* cls = nullptr;        // enclosing class, if any
  const Variable* owner = nullptr;       // for domains and dims
  std::optional<SourceLocation> where;   // nearest enclosing location
};

// Visits every expression root with its lexical scope: top-level features,
// then class bodies (features incl. inherited), records, forall indices and
// let names, exactly as name lookup sees them.
void walk_exprs(PivotModel& m, const std::function<void(Expr&, const ExprSite&)>& fn);
void walk_exprs(const PivotModel& m, const std::function<void(const Expr&, const ExprSite&)>& fn);

}  // namespace cpforge::pivot
