#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpforge/pivot.hpp"

namespace cpforge::pivot {

// Deep copy. Kept as a named operation because passes call it the way the
// rewrite rules call `duplicate`: once per produced copy.
template <class T>
T duplicate(const T& node) {
  return T(node);
}

// Replace every free occurrence of the single-step reference `name` by
// `replacement`. Forall indices and let-bound names shadow.
Expr substitute(const Expr& e, const std::string& name, const Expr& replacement);
Statement substitute(const Statement& s, const std::string& name, const Expr& replacement);
std::vector<Statement> substitute(const std::vector<Statement>& body, const std::string& name,
                                  const Expr& replacement);

// Names occurring free: the head of each access path plus names inside index
// expressions, minus forall indices and let names bound around them.
std::set<std::string> free_names(const Expr& e);
std::set<std::string> free_names(const Statement& s);
std::set<std::string> free_names(const std::vector<Statement>& body);

// `prefix` followed by the smallest positive integer not in `taken`.
std::string fresh_name(const std::string& prefix, const std::set<std::string>& taken);

// Per-run generator of V1, V2, ... that skips names already in use.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken, std::string prefix = "V")
      : taken_(std::move(taken)), prefix_(std::move(prefix)) {}

  std::string next();
  void reserve(const std::string& name) { taken_.insert(name); }

 private:
  std::set<std::string> taken_;
  std::string prefix_;
};

// Every name declared anywhere in the model: elements, features, forall
// indices, let names, enum literals.
std::set<std::string> all_declared_names(const PivotModel& m);

// Node-kind census used by tests and pass post-condition checks.
struct Census {
  std::size_t classes = 0;
  std::size_t enums = 0;
  std::size_t enumLiterals = 0;
  std::size_t records = 0;
  std::size_t variables = 0;
  std::size_t matrices = 0;
  std::size_t constants = 0;
  std::size_t zones = 0;
  std::size_t constraints = 0;
  std::size_t foralls = 0;
  std::size_t ifs = 0;
  std::size_t lets = 0;
};

Census census(const PivotModel& m);
Census census(const std::vector<Statement>& body);

// Calls `fn` on every expression root in the model: constraint bodies, forall
// bounds, if conditions, let values, domains, array dims, constant values.
void for_each_expr(PivotModel& m, const std::function<void(Expr&)>& fn);

// Bottom-up rewrite: children first, then `fn` on the rebuilt node.
Expr rewrite(const Expr& e, const std::function<Expr(Expr)>& fn);

// Integer constant environment.
using ConstEnv = std::map<std::string, std::int64_t>;

// Top-level integer/boolean constants with optional overrides applied.
ConstEnv constant_env(const PivotModel& m, const ConstEnv& overrides = {});

// Folds an expression built from integer literals, boolean literals and names
// in `env`. Returns nullopt when anything else is involved. Division truncates
// toward zero; division by zero yields nullopt.
std::optional<std::int64_t> eval_int(const Expr& e, const ConstEnv& env);

// Folds pure literal integer subtrees (no names) into literals.
Expr fold_literals(const Expr& e);

// Row-major 1-based linearisation: acc = i1; acc = (acc - 1) * d_k + i_k.
// `dims` holds the size of every index position; only dims[1..] matter.
Expr linearize(const std::vector<Expr>& indices, const std::vector<Expr>& dims);
std::int64_t linearize(const std::vector<std::int64_t>& indices,
                       const std::vector<std::int64_t>& dims);

// Product of the given size expressions (`w*g`), literal-folded.
Expr product(const std::vector<Expr>& sizes);

}  // namespace cpforge::pivot
