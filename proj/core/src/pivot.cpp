#include "cpforge/pivot.hpp"

namespace cpforge::pivot {

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    case BinaryOp::Implies: return "implies";
    case BinaryOp::Intersect: return "intersect";
  }
  return "?";
}

bool is_comparison(BinaryOp op) {
  switch (op) {
    case BinaryOp::Eq:
    case BinaryOp::Ne:
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div;
}

bool is_logical(BinaryOp op) {
  return op == BinaryOp::And || op == BinaryOp::Or || op == BinaryOp::Implies;
}

Expr int_lit(std::int64_t v, NodeLoc loc) { return Expr{IntLit{v}, std::move(loc)}; }
Expr bool_lit(bool v, NodeLoc loc) { return Expr{BoolLit{v}, std::move(loc)}; }
Expr real_lit(double v, std::string text, NodeLoc loc) {
  return Expr{RealLit{v, std::move(text)}, std::move(loc)};
}
Expr enum_lit(std::string enumName, std::string literal, NodeLoc loc) {
  return Expr{EnumLit{std::move(enumName), std::move(literal)}, std::move(loc)};
}
Expr var_ref(std::string name, NodeLoc loc) {
  return var_ref(std::move(name), std::vector<Expr>{}, std::move(loc));
}
Expr var_ref(std::string name, std::vector<Expr> indices, NodeLoc loc) {
  std::vector<AccessStep> path;
  path.push_back(AccessStep{std::move(name), std::move(indices)});
  return var_ref(std::move(path), std::move(loc));
}
Expr var_ref(std::vector<AccessStep> path, NodeLoc loc) {
  return Expr{VarRef{std::move(path)}, std::move(loc)};
}
Expr unary(UnaryOp op, Expr arg, NodeLoc loc) {
  return Expr{Unary{op, Box<Expr>(std::move(arg))}, std::move(loc)};
}
Expr binary(BinaryOp op, Expr lhs, Expr rhs, NodeLoc loc) {
  return Expr{Binary{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))}, std::move(loc)};
}
Expr card(Expr arg, NodeLoc loc) { return Expr{Card{Box<Expr>(std::move(arg))}, std::move(loc)}; }

const std::string* simple_name(const Expr& e) {
  const auto* ref = e.as<VarRef>();
  if (!ref || ref->path.size() != 1 || !ref->path[0].indices.empty()) return nullptr;
  return &ref->path[0].name;
}

Domain interval(Expr lower, Expr upper) { return Domain{Interval{std::move(lower), std::move(upper)}}; }

std::string TypeRef::str() const {
  switch (kind) {
    case Kind::Int: return "int";
    case Kind::Real: return "real";
    case Kind::Bool: return "bool";
    case Kind::Named: return name;
  }
  return name;
}

Statement constraint_stmt(Expr e, NodeLoc loc) {
  return Statement{Constraint{std::move(e)}, std::move(loc)};
}

const std::string& Feature::name() const {
  return std::visit([](const auto& f) -> const std::string& { return f.name; }, node);
}

const std::string& ModelElement::name() const {
  return std::visit(
      overloaded{
          [](const Feature& f) -> const std::string& { return f.name(); },
          [](const auto& e) -> const std::string& { return e.name; },
      },
      node);
}

ModelElement element(Feature f) { return ModelElement{std::move(f)}; }

const ClassType* PivotModel::main_class() const {
  for (const auto& e : elements)
    if (const auto* c = e.as<ClassType>(); c && c->isMain) return c;
  return nullptr;
}

const ClassType* PivotModel::find_class(const std::string& n) const {
  for (const auto& e : elements)
    if (const auto* c = e.as<ClassType>(); c && c->name == n) return c;
  return nullptr;
}

const EnumType* PivotModel::find_enum(const std::string& n) const {
  for (const auto& e : elements)
    if (const auto* c = e.as<EnumType>(); c && c->name == n) return c;
  return nullptr;
}

}  // namespace cpforge::pivot
