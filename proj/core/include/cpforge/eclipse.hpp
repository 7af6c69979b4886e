#pragma once

// ECLiPSe target model: one predicate whose body is a flat sequence of atoms.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cpforge/box.hpp"
#include "cpforge/pivot.hpp"

namespace cpforge::eclipse {

struct Term {
  enum class Kind { Num, Var, Infix, Call, Subscript, List };

  Kind kind = Kind::Num;
  std::int64_t num = 0;
  std::string name;  // variable name, infix operator or functor
  std::vector<Term> args;

  static Term number(std::int64_t v) { return {Kind::Num, v, {}, {}}; }
  static Term var(std::string n) { return {Kind::Var, 0, std::move(n), {}}; }
  static Term infix(std::string op, Term a, Term b);
  static Term call(std::string f, std::vector<Term> args) { return {Kind::Call, 0, std::move(f), std::move(args)}; }

  friend bool operator==(const Term&, const Term&) = default;
};

std::string to_string(const Term& t);

struct Atom;

struct ConstBind {
  std::string name;
  std::int64_t value = 0;
  friend bool operator==(const ConstBind&, const ConstBind&) = default;
};

// intsets(List, count, lo, hi); `intset(S, lo, hi)` when count is absent.
struct IntsetsDecl {
  std::string listVar;
  std::optional<std::int64_t> count;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const IntsetsDecl&, const IntsetsDecl&) = default;
};

// Integer decision variable or array: `dim(Q,[n])` then `Q :: lo..hi`.
struct IntDecl {
  std::string var;
  std::optional<std::int64_t> size;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<std::int64_t> values;  // explicit domain, if non-empty
  friend bool operator==(const IntDecl&, const IntDecl&) = default;
};

struct ListAlias {
  std::string name;
  std::vector<std::string> targets;
  friend bool operator==(const ListAlias&, const ListAlias&) = default;
};

struct ForLoop {
  std::string iter;
  Term from;
  Term to;
  std::vector<std::string> params;
  std::vector<Atom> body;
  friend bool operator==(const ForLoop&, const ForLoop&);
};

struct IsBind {
  std::string var;
  Term expr;
  friend bool operator==(const IsBind&, const IsBind&) = default;
};

struct NthCall {
  std::string outVar;
  Term index;
  std::string listVar;
  friend bool operator==(const NthCall&, const NthCall&) = default;
};

// #(Set, Out): Out is a fresh local or an integer literal.
struct CardBind {
  Term setExpr;
  Term out;
  friend bool operator==(const CardBind&, const CardBind&) = default;
};

struct ConstraintAtom {
  Term expr;
  friend bool operator==(const ConstraintAtom&, const ConstraintAtom&) = default;
};

// label_sets(L) for set models, labeling(L) for integer models.
struct LabelSets {
  std::string listVar;
  bool sets = true;
  friend bool operator==(const LabelSets&, const LabelSets&) = default;
};

struct Atom {
  std::variant<ConstBind, IntsetsDecl, IntDecl, ListAlias, ForLoop, IsBind, NthCall, CardBind, ConstraintAtom,
               LabelSets>
      node;

  template <class T>
  bool is() const { return std::holds_alternative<T>(node); }
  template <class T>
  const T* as() const { return std::get_if<T>(&node); }

  friend bool operator==(const Atom&, const Atom&) = default;
};

inline bool operator==(const ForLoop& a, const ForLoop& b) {
  return a.iter == b.iter && a.from == b.from && a.to == b.to && a.params == b.params && a.body == b.body;
}

struct Predicate {
  std::string name;
  std::vector<std::string> params;
  std::vector<Atom> body;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct EclModel {
  std::vector<Predicate> predicates;
  friend bool operator==(const EclModel&, const EclModel&) = default;
};

// Splits set-array accesses and cardinalities inside constraints into `let`
// bindings: index local, element local, cardinality local. Idempotent.
pivot::PivotModel introduce_locals(const pivot::PivotModel& p);

// Throws PassError(UnsupportedConstruct) if the model still holds classes,
// records, enums, ifs, matrices or values the target cannot express.
// Runs introduce_locals first.
EclModel to_eclipse(const pivot::PivotModel& p);

std::string emit(const EclModel& e);

// Names used but not bound by the atoms, in first-use order.
std::vector<std::string> free_names(const std::vector<Atom>& atoms);

}  // namespace cpforge::eclipse
