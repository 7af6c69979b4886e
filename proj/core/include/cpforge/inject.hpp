#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cpforge/parser.hpp"
#include "cpforge/pivot.hpp"
#include "cpforge/printer.hpp"

namespace cpforge::frontend {

// Builds the pivot model from the two parse trees: data declarations first,
// then the model declarations. Every identifier is resolved through nested
// symbol tables (global, class incl. inherited features, record, forall
// index); identifiers that only name an enum literal become EnumLit nodes.
// Throws InjectError.
pivot::PivotModel inject(const SourceAst& src);
pivot::PivotModel inject(const ModelAst& model, const DataAst& data);

// parse + inject on in-memory text.
pivot::PivotModel load(std::string_view modelText, std::string_view dataText,
                       const std::string& modelFile = "<model>", const std::string& dataFile = "<data>");

// Reads both files. A missing file raises std::runtime_error.
pivot::PivotModel load_files(const std::filesystem::path& model, const std::filesystem::path& data);

std::string read_file(const std::filesystem::path& p);

// Renders a model back to the data/model file pair.
pivot::SourceText extract_source(const pivot::PivotModel& p);

}  // namespace cpforge::frontend
