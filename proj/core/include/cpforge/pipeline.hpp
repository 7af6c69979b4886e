#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpforge/diagnostics.hpp"
#include "cpforge/passes.hpp"

namespace cpforge::pipeline {

enum class Target { Eclipse, Pivot };

std::optional<Target> target_from_token(const std::string& t);
const char* token(Target t);

// Exit statuses of run, check and the CLI.
constexpr int kExitOk = 0;
constexpr int kExitModelErrors = 1;  // syntax, injection or checker errors
constexpr int kExitPassErrors = 2;   // pass or backend errors
constexpr int kExitUsage = 64;       // bad arguments, unreadable input

struct PipelineConfig {
  std::filesystem::path model;
  std::filesystem::path data;
  std::string from = "scomma";
  Target target = Target::Eclipse;
  std::vector<passes::PassId> chain;
  std::filesystem::path out;                   // empty: keep the output in memory
  std::optional<std::filesystem::path> report;  // per-stage timings, table1_csv layout
  passes::Options options;
};

// JSON config: {"source": "m.scm", "data": "d.scd", "target": "eclipse",
// "chain": ["flatten-classes", ...], "out": "o.ecl", "report": "r.csv"}.
// Relative paths resolve against the config file's directory.
// Throws std::invalid_argument on a malformed file.
PipelineConfig load_config(const std::filesystem::path& path);

struct StageReport {
  std::string problem;
  std::size_t inputLines = 0;
  std::size_t outputLines = 0;
  double inject = 0;
  double sToP = 0;
  std::vector<passes::PassTiming> passes;
  std::optional<double> pToE;  // absent for the pivot target
  double extract = 0;

  // Summed time of the chain's passes in `group`, or nullopt if none ran.
  std::optional<double> group(const std::vector<passes::PassId>& group) const;
  double total() const;
};

struct RunOutcome {
  int exitCode = kExitOk;
  StageReport report;
  std::vector<Problem> problems;  // checker findings and pass warnings
  std::string output;             // emitted target text
  std::string message;            // failure description for standard error
};

// parse, inject, check (stop on errors), chain, backend, emit, write.
RunOutcome run(const PipelineConfig& config);

// Same stages on in-memory source text; nothing is written. An empty
// `problem` names the report row after the model.
RunOutcome run_text(const std::string& problem, const std::string& modelText, const std::string& dataText,
                    Target target, const std::vector<passes::PassId>& chain, const passes::Options& opts = {});

// Table column groups.
const std::vector<passes::PassId>& comp_passes();    // flatten-classes, flatten-records
const std::vector<passes::PassId>& enum_passes();    // remove-enums
const std::vector<passes::PassId>& forall_passes();  // remove-if, unroll-loops, simplify, flatten-matrices

std::string table1_csv(const std::vector<StageReport>& rows);
std::string table2_csv(const std::vector<StageReport>& rows);

// Synthesised instance of a benchmark family.
struct Instance {
  std::string name;
  std::string model;
  std::string data;
};

Instance nqueens(int n);
Instance golfers(int weeks);
// Throws std::invalid_argument for an unknown family.
Instance generate(const std::string& family, int size);

struct BenchResult {
  std::vector<StageReport> rows;
  int exitCode = kExitOk;
  std::string message;
};

// For the eclipse target, flatten-classes and flatten-records (and
// remove-enums when the model has enums) are prepended unless already present.
BenchResult bench(const std::string& family, const std::vector<int>& sizes, const std::vector<passes::PassId>& chain,
                  Target target = Target::Eclipse);

// parse + inject + check; prints Problems to `out`. Returns the exit status.
int check_cmd(const std::filesystem::path& model, const std::filesystem::path& data, std::ostream& out,
              std::ostream& err);

std::size_t count_lines(const std::string& text);

}  // namespace cpforge::pipeline
