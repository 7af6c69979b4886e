#pragma once

#include <set>
#include <string>

#include "cpforge/pivot.hpp"

namespace cpforge::pivot {

// Renders pivot nodes in the source dialect. Arithmetic operators print
// without surrounding spaces (`(w1-1)*g+g1`), everything else spaced.
class Printer {
 public:
  Printer() = default;
  // Enum literals whose name is also used for something else print qualified
  // (`Name.g`) so that they survive a re-parse.
  explicit Printer(const PivotModel& context);

  std::string expr(const Expr& e) const;
  std::string statement(const Statement& s, int indent = 0) const;
  std::string feature(const Feature& f, int indent = 0) const;
  std::string domain(const Domain& d) const;
  std::string type(const TypeRef& t) const { return t.str(); }

 private:
  std::string expr(const Expr& e, int minPrec) const;
  void statement(const Statement& s, int indent, std::string& out) const;
  void body(const std::vector<Statement>& b, int indent, std::string& out) const;
  void feature(const Feature& f, int indent, std::string& out) const;

  std::set<std::string> ambiguous_;
};

// The two files of the source convention: `.scd` data (enums, constants and
// an optional `model Name;` header) and `.scm` model (everything else).
struct SourceText {
  std::string data;
  std::string model;

  std::string str() const { return data + model; }
};

SourceText print_model(const PivotModel& m);

// Convenience for tests and diagnostics.
std::string to_source(const Expr& e);

}  // namespace cpforge::pivot
