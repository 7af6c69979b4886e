#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpforge/diagnostics.hpp"
#include "cpforge/pivot.hpp"

namespace cpforge::passes {

enum class PassId {
  FlattenClasses,
  FlattenRecords,
  RemoveEnums,
  RemoveIf,
  UnrollLoops,
  SimplifyConstants,
  FlattenMatrices,
};

// CLI/config spelling: flatten-classes, flatten-records, remove-enums,
// remove-if, unroll-loops, simplify, flatten-matrices.
const char* token(PassId id);
std::optional<PassId> pass_from_token(std::string_view token);
const std::vector<PassId>& all_passes();

// "a,b,c" -> ids. Throws std::invalid_argument naming the unknown token.
std::vector<PassId> parse_chain(std::string_view list);
std::string chain_text(const std::vector<PassId>& chain);

// How the cells of one variable of the input model are named in the output.
// A cell is a dotted instance path plus the concatenated indices of every
// array step on the way. The output cell keeps the first `keep` indices and
// replaces the rest by their 1-based row-major linearisation over `dims`
// (when `linearize` is set).
struct NameMapEntry {
  std::string oldPath;
  std::string newPath;
  std::size_t keep = 0;
  bool linearize = false;
  std::vector<pivot::Expr> dims;  // in the output model's namespace
};

struct NameMap {
  std::vector<NameMapEntry> entries;

  const NameMapEntry* find(const std::string& oldPath) const;
  bool identity() const { return entries.empty(); }
};

struct PassResult {
  pivot::PivotModel model;
  NameMap names;
  std::vector<Problem> warnings;
};

struct Options {
  // Record-array nesting beyond this depth is rejected.
  std::size_t maxRecordDepth = 2;
};

PassResult flatten_classes(const pivot::PivotModel& p);
PassResult flatten_records(const pivot::PivotModel& p, const Options& opts = {});
PassResult remove_enums(const pivot::PivotModel& p);
PassResult remove_if(const pivot::PivotModel& p);
PassResult unroll_loops(const pivot::PivotModel& p);
PassResult simplify_constants(const pivot::PivotModel& p);
PassResult flatten_matrices(const pivot::PivotModel& p);

PassResult run_pass(PassId id, const pivot::PivotModel& p, const Options& opts = {});

struct PassTiming {
  PassId id;
  double seconds = 0.0;
};

struct ChainResult {
  pivot::PivotModel model;
  std::vector<NameMap> maps;  // one per pass, in chain order
  std::vector<PassTiming> timings;
  std::vector<Problem> warnings;
};

// Throws PassError(ChainOrder) when flatten-records would see classes or
// remove-if comes after unroll-loops.
void check_chain(const pivot::PivotModel& p, const std::vector<PassId>& chain);

ChainResult run_chain(const pivot::PivotModel& p, const std::vector<PassId>& chain,
                      const Options& opts = {});

}  // namespace cpforge::passes
