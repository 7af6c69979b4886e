#include "cpforge/printer.hpp"

#include "cpforge/pivot_ops.hpp"

namespace cpforge::pivot {

namespace {

// Binding strength, higher binds tighter.
constexpr int kImplies = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kNot = 4;
constexpr int kCompare = 5;
constexpr int kIntersect = 6;
constexpr int kAdd = 7;
constexpr int kMul = 8;
constexpr int kUnary = 9;
constexpr int kPrimary = 10;

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Implies: return kImplies;
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Intersect: return kIntersect;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdd;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kMul;
    default: return kCompare;
  }
}

int precedence(const Expr& e) {
  if (const auto* b = e.as<Binary>()) return precedence(b->op);
  if (const auto* u = e.as<Unary>()) return u->op == UnaryOp::Not ? kNot : kUnary;
  return kPrimary;
}

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

}  // namespace

Printer::Printer(const PivotModel& context) {
  std::set<std::string> literals;
  for (const auto& e : context.elements)
    if (const auto* t = e.as<EnumType>()) literals.insert(t->literals.begin(), t->literals.end());
  std::set<std::string> others = all_declared_names(context);
  for (const auto& e : context.elements)
    if (const auto* t = e.as<EnumType>())
      for (const auto& l : t->literals) others.erase(l);
  for (const auto& l : literals)
    if (others.count(l)) ambiguous_.insert(l);
  // A literal declared by two enums is ambiguous on its own.
  std::set<std::string> seen;
  for (const auto& e : context.elements)
    if (const auto* t = e.as<EnumType>())
      for (const auto& l : t->literals)
        if (!seen.insert(l).second) ambiguous_.insert(l);
}

std::string Printer::expr(const Expr& e) const { return expr(e, 0); }

std::string Printer::expr(const Expr& e, int minPrec) const {
  std::string s = std::visit(
      overloaded{
          [](const IntLit& i) { return std::to_string(i.value); },
          [](const RealLit& r) { return r.text; },
          [](const BoolLit& b) { return std::string(b.value ? "true" : "false"); },
          [&](const EnumLit& l) {
            return ambiguous_.count(l.literal) ? l.enumName + "." + l.literal : l.literal;
          },
          [&](const VarRef& ref) {
            std::string out;
            for (std::size_t i = 0; i < ref.path.size(); ++i) {
              if (i) out += '.';
              out += ref.path[i].name;
              if (ref.path[i].indices.empty()) continue;
              out += '[';
              for (std::size_t k = 0; k < ref.path[i].indices.size(); ++k) {
                if (k) out += ", ";
                out += expr(ref.path[i].indices[k], 0);
              }
              out += ']';
            }
            return out;
          },
          [&](const Unary& u) {
            if (u.op == UnaryOp::Not) return "not " + expr(*u.arg, kUnary);
            // `-(3)` keeps a negated literal distinct from the literal -3.
            if (u.arg->is<IntLit>() || u.arg->is<RealLit>()) return "-(" + expr(*u.arg, 0) + ")";
            return "-" + expr(*u.arg, kUnary);
          },
          [&](const Binary& b) {
            int p = precedence(b.op);
            int lp = p, rp = p + 1;
            if (b.op == BinaryOp::Implies) {
              lp = p + 1;
              rp = p;
            } else if (is_comparison(b.op)) {
              lp = p + 1;
            }
            std::string sep = is_arithmetic(b.op) ? to_string(b.op) : std::string(" ") + to_string(b.op) + " ";
            return expr(*b.lhs, lp) + sep + expr(*b.rhs, rp);
          },
          [&](const Card& c) { return "card(" + expr(*c.arg, 0) + ")"; },
      },
      e.node);
  if (precedence(e) < minPrec) return "(" + s + ")";
  // Keeps `x-(-3)` from printing as `x--3`.
  bool negativeLit = (e.is<IntLit>() || e.is<RealLit>()) && s.front() == '-';
  if (negativeLit && minPrec >= kAdd) return "(" + s + ")";
  return s;
}

std::string Printer::domain(const Domain& d) const {
  return std::visit(overloaded{
                        [&](const Interval& i) {
                          return "[" + expr(i.lower) + ", " + expr(i.upper) + "]";
                        },
                        [&](const ExplicitSet& s) {
                          std::string out = "{";
                          for (std::size_t i = 0; i < s.values.size(); ++i) {
                            if (i) out += ", ";
                            out += expr(s.values[i]);
                          }
                          return out + "}";
                        },
                    },
                    d.node);
}

std::string Printer::statement(const Statement& s, int indent) const {
  std::string out;
  statement(s, indent, out);
  return out;
}

void Printer::body(const std::vector<Statement>& b, int indent, std::string& out) const {
  for (const auto& s : b) statement(s, indent, out);
}

void Printer::statement(const Statement& s, int indent, std::string& out) const {
  std::visit(overloaded{
                 [&](const Constraint& c) { out += pad(indent) + expr(c.expr) + ";\n"; },
                 [&](const Forall& f) {
                   out += pad(indent) + "forall(" + f.index + " in " + expr(f.lower, kAdd) + ".." +
                          expr(f.upper, kAdd) + ") {\n";
                   body(f.body, indent + 1, out);
                   out += pad(indent) + "}\n";
                 },
                 [&](const IfStmt& i) {
                   out += pad(indent) + "if (" + expr(i.cond) + ") {\n";
                   body(i.thenBody, indent + 1, out);
                   if (i.elseBody) {
                     out += pad(indent) + "} else {\n";
                     body(*i.elseBody, indent + 1, out);
                   }
                   out += pad(indent) + "}\n";
                 },
                 [&](const Let& l) { out += pad(indent) + "let " + l.name + " := " + expr(l.value) + ";\n"; },
             },
             s.node);
}

std::string Printer::feature(const Feature& f, int indent) const {
  std::string out;
  feature(f, indent, out);
  return out;
}

namespace {

std::string dims_text(const Printer& p, const std::optional<ArrayDims>& a) {
  if (!a) return {};
  std::string out = "[" + p.expr(a->n);
  if (a->m) out += ", " + p.expr(*a->m);
  return out + "]";
}

}  // namespace

void Printer::feature(const Feature& f, int indent, std::string& out) const {
  std::visit(overloaded{
                 [&](const Variable& v) {
                   out += pad(indent) + type(v.type) + (v.isSet ? " set " : " ") + v.name +
                          dims_text(*this, v.array);
                   if (v.domain) out += " in " + domain(*v.domain);
                   out += ";\n";
                 },
                 [&](const Constant& k) {
                   out += pad(indent) + type(k.type) + " " + k.name + " := " + expr(k.value) + ";\n";
                 },
                 [&](const ConstraintZone& z) {
                   out += pad(indent) + "constraint " + z.name + " {\n";
                   body(z.statements, indent + 1, out);
                   out += pad(indent) + "}\n";
                 },
                 [&](const Record& r) {
                   out += pad(indent) + "record " + r.name + dims_text(*this, r.array) + " {\n";
                   for (const auto& x : r.elements) feature(x, indent + 1, out);
                   out += pad(indent) + "}\n";
                 },
             },
             f.node);
}

SourceText print_model(const PivotModel& m) {
  Printer p(m);
  SourceText out;
  if (!m.main_class() && !m.elements.empty()) out.data += "model " + m.name + ";\n";
  for (const auto& e : m.elements) {
    std::visit(overloaded{
                   [&](const EnumType& t) {
                     out.data += "enum " + t.name + " := {";
                     for (std::size_t i = 0; i < t.literals.size(); ++i)
                       out.data += (i ? ", " : "") + t.literals[i];
                     out.data += "};\n";
                   },
                   [&](const ClassType& c) {
                     std::string head;
                     if (c.isMain) head += "main ";
                     if (c.isAbstract) head += "abstract ";
                     head += "class " + c.name;
                     for (std::size_t i = 0; i < c.superTypes.size(); ++i)
                       head += (i ? ", " : " extends ") + c.superTypes[i];
                     out.model += head + " {\n";
                     for (const auto& f : c.features) out.model += p.feature(f, 1);
                     out.model += "}\n";
                   },
                   [&](const Feature& f) {
                     if (f.as<Constant>())
                       out.data += p.feature(f, 0);
                     else
                       out.model += p.feature(f, 0);
                   },
                   [&](const Predicate& pr) {
                     out.model += "predicate " + pr.name + " {\n";
                     for (const auto& s : pr.statements) out.model += p.statement(s, 1);
                     out.model += "}\n";
                   },
               },
               e.node);
  }
  return out;
}

std::string to_source(const Expr& e) { return Printer().expr(e); }

}  // namespace cpforge::pivot
