#include <sstream>

#include "cpforge/eclipse.hpp"

namespace cpforge::eclipse {

namespace {

int precedence(const std::string& op) {
  if (op == "=>") return 1;
  if (op == "or") return 2;
  if (op == "and") return 3;
  if (op == "+" || op == "-") return 6;
  if (op == "*" || op == "//") return 7;
  if (op == "/\\") return 5;
  return 4;  // relational
}

bool spaced(const std::string& op) { return precedence(op) <= 5; }

void print(std::ostream& os, const Term& t, int parent, bool right);

void print_operand(std::ostream& os, const Term& t, const std::string& op, bool right) {
  int p = precedence(op);
  // Operands of the logical connectives are always bracketed unless atomic.
  if (p <= 3 && t.kind == Term::Kind::Infix) {
    os << "(";
    print(os, t, 0, false);
    os << ")";
    return;
  }
  print(os, t, p, right);
}

void print(std::ostream& os, const Term& t, int parent, bool right) {
  switch (t.kind) {
    case Term::Kind::Num:
      if (t.num < 0 && parent >= 6) {
        os << "(" << t.num << ")";
      } else {
        os << t.num;
      }
      return;
    case Term::Kind::Var:
      os << t.name;
      return;
    case Term::Kind::Subscript:
      os << t.name << "[";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ",";
        print(os, t.args[i], 0, false);
      }
      os << "]";
      return;
    case Term::Kind::List:
      os << "[";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ",";
        print(os, t.args[i], 0, false);
      }
      os << "]";
      return;
    case Term::Kind::Call:
      if (t.name == "-" && t.args.size() == 1) {
        os << "-";
        print(os, t.args[0], 8, true);
        return;
      }
      os << t.name;
      if (t.args.empty()) return;
      os << "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) os << ",";
        print(os, t.args[i], 0, false);
      }
      os << ")";
      return;
    case Term::Kind::Infix: {
      int p = precedence(t.name);
      bool paren = p < parent || (p == parent && right) || (parent >= 4 && p == 4 && parent == 4);
      if (paren) os << "(";
      print_operand(os, t.args[0], t.name, false);
      os << (spaced(t.name) ? " " + t.name + " " : t.name);
      print_operand(os, t.args[1], t.name, true);
      if (paren) os << ")";
      return;
    }
  }
}

std::string params_text(const std::vector<std::string>& ps) {
  std::string s;
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i];
  return s;
}

class Emitter {
 public:
  explicit Emitter(std::ostream& os) : os_(os) {}

  void atoms(const std::vector<Atom>& body, int depth) {
    for (std::size_t i = 0; i < body.size(); ++i) {
      atom(body[i], depth);
      os_ << (i + 1 < body.size() ? ",\n" : "");
    }
  }

 private:
  void indent(int depth) { os_ << std::string(static_cast<std::size_t>(depth), ' '); }

  void atom(const Atom& a, int depth) {
    indent(depth);
    std::visit(overloaded{
                   [&](const ConstBind& c) { os_ << c.name << " is " << c.value; },
                   [&](const IntsetsDecl& d) {
                     if (d.count) {
                       os_ << "intsets(" << d.listVar << "," << *d.count << "," << d.lo << "," << d.hi << ")";
                     } else {
                       os_ << "intset(" << d.listVar << "," << d.lo << "," << d.hi << ")";
                     }
                   },
                   [&](const IntDecl& d) {
                     if (d.size) {
                       os_ << "dim(" << d.var << ",[" << *d.size << "]),\n";
                       indent(depth);
                     }
                     os_ << d.var << " :: ";
                     if (d.values.empty()) {
                       os_ << d.lo << ".." << d.hi;
                     } else {
                       os_ << "[";
                       for (std::size_t i = 0; i < d.values.size(); ++i) os_ << (i ? "," : "") << d.values[i];
                       os_ << "]";
                     }
                   },
                   [&](const ListAlias& l) {
                     os_ << l.name << " = ";
                     if (l.targets.size() == 1) {
                       os_ << l.targets[0];
                     } else {
                       os_ << "[" << params_text(l.targets) << "]";
                     }
                   },
                   [&](const ForLoop& f) {
                     os_ << "(for(" << f.iter << "," << to_string(f.from) << "," << to_string(f.to) << ")";
                     if (!f.params.empty()) os_ << ", param(" << params_text(f.params) << ")";
                     os_ << " do\n";
                     if (f.body.empty()) {
                       indent(depth + 1);
                       os_ << "true";
                     } else {
                       atoms(f.body, depth + 1);
                     }
                     os_ << "\n";
                     indent(depth);
                     os_ << ")";
                   },
                   [&](const IsBind& b) { os_ << b.var << " is " << to_string(b.expr); },
                   [&](const NthCall& n) {
                     os_ << "nth(" << n.outVar << "," << to_string(n.index) << "," << n.listVar << ")";
                   },
                   [&](const CardBind& c) { os_ << "#(" << to_string(c.setExpr) << ", " << to_string(c.out) << ")"; },
                   [&](const ConstraintAtom& c) { os_ << to_string(c.expr); },
                   [&](const LabelSets& l) { os_ << (l.sets ? "label_sets(" : "labeling(") << l.listVar << ")"; },
               },
               a.node);
  }

  std::ostream& os_;
};

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t, 0, false);
  return os.str();
}

std::string emit(const EclModel& e) {
  std::ostringstream os;
  for (const auto& p : e.predicates) {
    os << p.name;
    if (!p.params.empty()) os << "(" << params_text(p.params) << ")";
    os << ":-";
    if (p.body.empty()) {
      os << " true.\n";
      continue;
    }
    if (p.body.size() == 1 && p.body[0].is<LabelSets>()) {
      os << " ";
      Emitter(os).atoms(p.body, 0);
      os << ".\n";
      continue;
    }
    os << "\n";
    Emitter(os).atoms(p.body, 1);
    os << ".\n";
  }
  return os.str();
}

}  // namespace cpforge::eclipse
