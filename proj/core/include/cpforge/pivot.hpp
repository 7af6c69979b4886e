#pragma once

// Pivot intermediate representation.
//
// Every node is a plain value: copying a node deep-copies the subtree, so a
// copy never shares mutable state with its source. Source locations ride along
// on most nodes but never take part in structural equality.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpforge/box.hpp"
#include "cpforge/diagnostics.hpp"

namespace cpforge::pivot {

// Optional source position. Compares equal to every other NodeLoc.
struct NodeLoc {
  std::optional<SourceLocation> value;

  NodeLoc() = default;
  NodeLoc(SourceLocation loc) : value(std::move(loc)) {}  // NOLINT(implicit)
  NodeLoc(std::optional<SourceLocation> loc) : value(std::move(loc)) {}  // NOLINT(implicit)

  friend bool operator==(const NodeLoc&, const NodeLoc&) { return true; }
};

// ---------------------------------------------------------------------------
// Expressions

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or, Implies, Intersect };
enum class UnaryOp { Neg, Not };

const char* to_string(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_logical(BinaryOp op);

struct Expr;

// One step of an access path: `name` or `name[i]` or `name[i, j]`.
struct AccessStep {
  std::string name;
  std::vector<Expr> indices;

  friend bool operator==(const AccessStep&, const AccessStep&);
};

struct IntLit {
  std::int64_t value = 0;
  friend bool operator==(const IntLit&, const IntLit&) = default;
};

struct RealLit {
  double value = 0.0;
  std::string text;  // original spelling, reproduced by the printer
  friend bool operator==(const RealLit&, const RealLit&) = default;
};

struct BoolLit {
  bool value = false;
  friend bool operator==(const BoolLit&, const BoolLit&) = default;
};

struct EnumLit {
  std::string enumName;
  std::string literal;
  friend bool operator==(const EnumLit&, const EnumLit&) = default;
};

struct VarRef {
  std::vector<AccessStep> path;
  friend bool operator==(const VarRef&, const VarRef&);
};

struct Unary {
  UnaryOp op;
  Box<Expr> arg;
  friend bool operator==(const Unary&, const Unary&);
};

struct Binary {
  BinaryOp op;
  Box<Expr> lhs;
  Box<Expr> rhs;
  friend bool operator==(const Binary&, const Binary&);
};

struct Card {
  Box<Expr> arg;
  friend bool operator==(const Card&, const Card&);
};

struct Expr {
  using Node = std::variant<IntLit, RealLit, BoolLit, EnumLit, VarRef, Unary, Binary, Card>;

  Node node;
  NodeLoc loc;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  T* as() { return std::get_if<T>(&node); }

  friend bool operator==(const Expr&, const Expr&) = default;
};

inline bool operator==(const AccessStep& a, const AccessStep& b) {
  return a.name == b.name && a.indices == b.indices;
}
inline bool operator==(const VarRef& a, const VarRef& b) { return a.path == b.path; }
inline bool operator==(const Unary& a, const Unary& b) { return a.op == b.op && a.arg == b.arg; }
inline bool operator==(const Binary& a, const Binary& b) {
  return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
}
inline bool operator==(const Card& a, const Card& b) { return a.arg == b.arg; }

Expr int_lit(std::int64_t v, NodeLoc loc = {});
Expr bool_lit(bool v, NodeLoc loc = {});
Expr real_lit(double v, std::string text, NodeLoc loc = {});
Expr enum_lit(std::string enumName, std::string literal, NodeLoc loc = {});
Expr var_ref(std::string name, NodeLoc loc = {});
Expr var_ref(std::string name, std::vector<Expr> indices, NodeLoc loc = {});
Expr var_ref(std::vector<AccessStep> path, NodeLoc loc = {});
Expr unary(UnaryOp op, Expr arg, NodeLoc loc = {});
Expr binary(BinaryOp op, Expr lhs, Expr rhs, NodeLoc loc = {});
Expr card(Expr arg, NodeLoc loc = {});

// Single-step reference without indices, e.g. a forall index or a constant.
const std::string* simple_name(const Expr& e);

// ---------------------------------------------------------------------------
// Domains, types, array shapes

struct Interval {
  Expr lower;
  Expr upper;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ExplicitSet {
  std::vector<Expr> values;
  friend bool operator==(const ExplicitSet&, const ExplicitSet&) = default;
};

struct Domain {
  std::variant<Interval, ExplicitSet> node;
  friend bool operator==(const Domain&, const Domain&) = default;
};

Domain interval(Expr lower, Expr upper);

// Vector `[n]` or matrix `[n, m]`; arrays are 1-based.
struct ArrayDims {
  Expr n;
  std::optional<Expr> m;

  bool is_matrix() const { return m.has_value(); }
  friend bool operator==(const ArrayDims&, const ArrayDims&) = default;
};

struct TypeRef {
  enum class Kind { Int, Real, Bool, Named };

  Kind kind = Kind::Int;
  std::string name;  // only for Named: an enum or class name

  static TypeRef int_type() { return {Kind::Int, {}}; }
  static TypeRef real_type() { return {Kind::Real, {}}; }
  static TypeRef bool_type() { return {Kind::Bool, {}}; }
  static TypeRef named(std::string n) { return {Kind::Named, std::move(n)}; }

  std::string str() const;
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

// ---------------------------------------------------------------------------
// Statements

struct Statement;

struct Constraint {
  Expr expr;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// forall(index in lower..upper) { body }
struct Forall {
  std::string index;
  Expr lower;
  Expr upper;
  std::vector<Statement> body;
  friend bool operator==(const Forall&, const Forall&);
};

struct IfStmt {
  Expr cond;
  std::vector<Statement> thenBody;
  std::optional<std::vector<Statement>> elseBody;
  friend bool operator==(const IfStmt&, const IfStmt&);
};

// Local binding introduced by the backend-specific locals pass. The name is
// visible to the statements that follow it in the same body.
struct Let {
  std::string name;
  Expr value;
  friend bool operator==(const Let&, const Let&) = default;
};

struct Statement {
  std::variant<Constraint, Forall, IfStmt, Let> node;
  NodeLoc loc;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  T* as() { return std::get_if<T>(&node); }

  friend bool operator==(const Statement&, const Statement&) = default;
};

inline bool operator==(const Forall& a, const Forall& b) {
  return a.index == b.index && a.lower == b.lower && a.upper == b.upper && a.body == b.body;
}
inline bool operator==(const IfStmt& a, const IfStmt& b) {
  return a.cond == b.cond && a.thenBody == b.thenBody && a.elseBody == b.elseBody;
}

Statement constraint_stmt(Expr e, NodeLoc loc = {});

// ---------------------------------------------------------------------------
// Features and model elements

struct Variable {
  std::string name;
  TypeRef type;
  bool isSet = false;
  std::optional<ArrayDims> array;
  std::optional<Domain> domain;
  NodeLoc loc;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constant {
  std::string name;
  TypeRef type;
  Expr value;
  NodeLoc loc;
  friend bool operator==(const Constant&, const Constant&) = default;
};

struct ConstraintZone {
  std::string name;
  std::vector<Statement> statements;
  NodeLoc loc;
  friend bool operator==(const ConstraintZone&, const ConstraintZone&) = default;
};

struct Feature;

// Untyped, possibly array-shaped bundle of features (composition flattening stage).
struct Record {
  std::string name;
  std::optional<ArrayDims> array;
  std::vector<Feature> elements;
  NodeLoc loc;
  friend bool operator==(const Record&, const Record&);
};

struct Feature {
  std::variant<Variable, Constant, ConstraintZone, Record> node;

  const std::string& name() const;
  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  T* as() { return std::get_if<T>(&node); }

  friend bool operator==(const Feature&, const Feature&) = default;
};

inline bool operator==(const Record& a, const Record& b) {
  return a.name == b.name && a.array == b.array && a.elements == b.elements;
}

struct EnumType {
  std::string name;
  std::vector<std::string> literals;
  NodeLoc loc;
  friend bool operator==(const EnumType&, const EnumType&) = default;
};

struct ClassType {
  std::string name;
  bool isMain = false;
  bool isAbstract = false;
  std::vector<std::string> superTypes;
  std::vector<Feature> features;
  NodeLoc loc;
  friend bool operator==(const ClassType&, const ClassType&) = default;
};

// Present for completeness of the element hierarchy; no pass produces or consumes it.
struct Predicate {
  std::string name;
  std::vector<Statement> statements;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct ModelElement {
  std::variant<EnumType, ClassType, Feature, Predicate> node;

  const std::string& name() const;
  template <class T>
  const T* as() const { return std::get_if<T>(&node); }
  template <class T>
  T* as() { return std::get_if<T>(&node); }

  // Shorthand for the Feature alternative holding a T.
  template <class T>
  const T* feature_as() const {
    const auto* f = std::get_if<Feature>(&node);
    return f ? f->as<T>() : nullptr;
  }

  friend bool operator==(const ModelElement&, const ModelElement&) = default;
};

ModelElement element(Feature f);

struct PivotModel {
  std::string name;
  std::vector<ModelElement> elements;

  const ClassType* main_class() const;
  const ClassType* find_class(const std::string& name) const;
  const EnumType* find_enum(const std::string& name) const;

  friend bool operator==(const PivotModel&, const PivotModel&) = default;
};

}  // namespace cpforge::pivot
