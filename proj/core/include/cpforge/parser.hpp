#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpforge/pivot.hpp"

namespace cpforge::frontend {

// Parse trees reuse pivot node types. Names inside expressions are left
// unresolved: every identifier is a VarRef until injection decides whether it
// denotes a feature, an index or an enum literal.

struct DataAst {
  std::optional<std::string> modelName;  // `model Name;` header
  std::vector<std::variant<pivot::EnumType, pivot::Constant>> decls;
};

struct ModelAst {
  std::vector<std::variant<pivot::ClassType, pivot::Feature, pivot::Predicate>> decls;
};

struct SourceAst {
  DataAst data;
  ModelAst model;
};

DataAst parse_data(std::string_view text, const std::string& file = "<data>");
ModelAst parse_model(std::string_view text, const std::string& file = "<model>");

// Parses a single expression; used by tests to state expected trees as text.
pivot::Expr parse_expr(std::string_view text, const std::string& file = "<expr>");

}  // namespace cpforge::frontend
