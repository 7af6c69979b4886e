#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpforge/passes.hpp"
#include "cpforge/pivot.hpp"
#include "cpforge/pivot_ops.hpp"

namespace cpforge::oracle {

struct Instance {
  pivot::ConstEnv constants;          // overrides for top-level constants
  std::size_t maxUniverse = 6;        // widest set universe
  std::size_t maxDomainWidth = 64;    // widest integer domain
  double maxSearchSpace = 1e7;        // candidate assignments
};

// A decision cell: dotted instance path plus the concatenated indices of the
// array steps along it, e.g. {"weeks.groups.players", {2, 1}}.
struct CellKey {
  std::string path;
  std::vector<std::int64_t> indices;

  std::string str() const;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct Value {
  bool isSet = false;
  std::int64_t scalar = 0;               // ints, bools (0/1), enum positions
  std::vector<std::int64_t> elements;    // sorted, for sets

  std::string str() const;
  friend auto operator<=>(const Value&, const Value&) = default;
  friend bool operator==(const Value&, const Value&) = default;
};

// Sorted by key.
using Assignment = std::vector<std::pair<CellKey, Value>>;

std::string to_string(const Assignment& a);

struct SolutionSet {
  std::vector<Assignment> solutions;  // sorted, duplicate-free

  std::size_t size() const { return solutions.size(); }
  bool empty() const { return solutions.empty(); }
  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;
};

enum class Strategy {
  GenerateAndFilter,  // enumerate every candidate, then test all constraints
  Pruning,            // depth-first, test each constraint once its cells are set
};

// Copy of `p` whose top-level and main-class constants named in `overrides`
// are replaced by literals, so every pass sees the same instance.
pivot::PivotModel with_constants(const pivot::PivotModel& p, const pivot::ConstEnv& overrides);

// Exact solution set. Throws OracleError when a domain is unbounded or real,
// or when the search space exceeds the instance caps.
SolutionSet solutions(const pivot::PivotModel& p, const Instance& inst = {},
                      Strategy strategy = Strategy::Pruning);

// Number of candidate assignments the model would enumerate.
double search_space(const pivot::PivotModel& p, const Instance& inst = {});

// Renames the cells of `a` as recorded by a pass. `env` evaluates the map's
// dimension expressions.
Assignment translate(const Assignment& a, const passes::NameMap& map, const pivot::ConstEnv& env);

struct Equivalence {
  bool equal = false;
  std::optional<Assignment> witness;  // in b's naming
  bool witnessInA = false;            // witness solves (translated) a but not b

  explicit operator bool() const { return equal; }
};

Equivalence equivalent(const pivot::PivotModel& a, const pivot::PivotModel& b, const passes::NameMap& map,
                       const Instance& inst = {});
Equivalence equivalent(const pivot::PivotModel& a, const pivot::PivotModel& b,
                       const std::vector<passes::NameMap>& maps, const Instance& inst = {});

}  // namespace cpforge::oracle
