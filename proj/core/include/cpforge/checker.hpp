#pragma once

#include <vector>

#include "cpforge/diagnostics.hpp"
#include "cpforge/pivot.hpp"

namespace cpforge::checker {

// Operand/operator consistency, chained equalities, indexing of arrays.
std::vector<Problem> check_types(const pivot::PivotModel& p);

// Domain bounds and array dimensions must be constant; intervals must be
// non-empty (a singleton interval is only a warning).
std::vector<Problem> check_domains(const pivot::PivotModel& p);

// One error per cycle in the inheritance graph and in the composition graph.
std::vector<Problem> check_cycles(const pivot::PivotModel& p);

// check_types ++ check_domains ++ check_cycles.
std::vector<Problem> check(const pivot::PivotModel& p);

}  // namespace cpforge::checker
