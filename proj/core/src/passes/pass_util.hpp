#pragma once

#include <functional>
#include <vector>

#include "cpforge/pivot.hpp"
#include "cpforge/pivot_ops.hpp"

namespace cpforge::passes::detail {

// Calls `fn` on every top-level statement list: zones (top-level, in
// classes, in records) and predicates. Nested bodies are the callee's job.
void for_each_body(pivot::PivotModel& m, const std::function<void(std::vector<pivot::Statement>&)>& fn);

// Integer constants of the whole model, class and record constants included,
// in declaration order.
pivot::ConstEnv scoped_constants(const pivot::PivotModel& m);

const std::optional<SourceLocation>& loc_of(const pivot::Expr& e);

}  // namespace cpforge::passes::detail
