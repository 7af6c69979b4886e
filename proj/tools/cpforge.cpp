// cpforge command-line driver: transform, check, solve, bench.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cpforge/checker.hpp"
#include "cpforge/inject.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/pipeline.hpp"

namespace {

using namespace cpforge;
using pipeline::kExitModelErrors;
using pipeline::kExitOk;
using pipeline::kExitPassErrors;
using pipeline::kExitUsage;

int usage(const std::string& msg) {
  std::cerr << "cpforge: " << msg << "\n";
  return kExitUsage;
}

void print_problems(const std::vector<Problem>& ps) {
  for (const auto& p : ps) std::cerr << p.str() << "\n";
}

struct TransformArgs {
  std::string config;
  std::string from = "scomma";
  std::string model;
  std::string data;
  std::string to = "eclipse";
  std::string chain;
  std::string out;
  std::string report;
  std::size_t maxRecordDepth = 2;
};

int transform(const TransformArgs& a) {
  pipeline::PipelineConfig c;
  try {
    if (!a.config.empty()) {
      c = pipeline::load_config(a.config);
    } else {
      if (a.model.empty() || a.data.empty()) return usage("transform needs --model and --data (or --config)");
      c.model = a.model;
      c.data = a.data;
      c.from = a.from;
      auto t = pipeline::target_from_token(a.to);
      if (!t) return usage("unknown target '" + a.to + "' (expected eclipse or pivot)");
      c.target = *t;
      if (!a.chain.empty()) c.chain = passes::parse_chain(a.chain);
      if (!a.out.empty()) c.out = a.out;
      if (!a.report.empty()) c.report = a.report;
    }
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  }
  c.options.maxRecordDepth = a.maxRecordDepth;

  auto r = pipeline::run(c);
  print_problems(r.problems);
  if (r.exitCode != kExitOk) {
    if (!r.message.empty() && r.exitCode != kExitPassErrors) std::cerr << "cpforge: " << r.message << "\n";
    return r.exitCode;
  }
  if (c.out.empty()) std::cout << r.output;
  return kExitOk;
}

struct SolveArgs {
  std::string model;
  std::string data;
  double cap = 1e7;
  std::size_t universe = 6;
  std::vector<std::string> overrides;
  bool count = false;
};

int solve(const SolveArgs& a) {
  pivot::PivotModel m;
  try {
    m = frontend::load_files(a.model, a.data);
  } catch (const SyntaxError& e) {
    std::cerr << Problem{Severity::Error, e.where().str(), e.message()}.str() << "\n";
    return kExitModelErrors;
  } catch (const InjectError& e) {
    std::cerr << Problem{Severity::Error, e.where().str(), e.message()}.str() << "\n";
    return kExitModelErrors;
  } catch (const std::exception& e) {
    return usage(e.what());
  }
  auto problems = checker::check(m);
  print_problems(problems);
  if (has_errors(problems)) return kExitModelErrors;

  oracle::Instance inst;
  inst.maxSearchSpace = a.cap;
  inst.maxUniverse = a.universe;
  for (const auto& o : a.overrides) {
    auto eq = o.find('=');
    if (eq == std::string::npos) return usage("--set expects name=value, got '" + o + "'");
    try {
      inst.constants[o.substr(0, eq)] = std::stoll(o.substr(eq + 1));
    } catch (const std::exception&) {
      return usage("--set value of '" + o + "' is not an integer");
    }
  }
  try {
    auto s = oracle::solutions(oracle::with_constants(m, inst.constants), inst);
    if (a.count) {
      std::cout << s.size() << "\n";
    } else {
      for (const auto& sol : s.solutions) std::cout << oracle::to_string(sol) << "\n";
    }
  } catch (const OracleError& e) {
    std::cerr << "cpforge: " << e.what() << "\n";
    return kExitPassErrors;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string family = "nqueens";
  std::vector<int> sizes;
  std::string chain;
  std::string to = "eclipse";
  int table = 2;
  std::string report;
};

int bench(const BenchArgs& a) {
  std::vector<passes::PassId> chain;
  try {
    if (!a.chain.empty()) chain = passes::parse_chain(a.chain);
    pipeline::generate(a.family, 1);
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  }
  auto t = pipeline::target_from_token(a.to);
  if (!t) return usage("unknown target '" + a.to + "'");
  auto r = pipeline::bench(a.family, a.sizes, chain, *t);
  if (r.exitCode != kExitOk) {
    std::cerr << "cpforge: " << r.message << "\n";
    return r.exitCode;
  }
  std::string csv = a.table == 1 ? pipeline::table1_csv(r.rows) : pipeline::table2_csv(r.rows);
  if (a.report.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(a.report, std::ios::binary);
    f << csv;
    if (!f) return usage("cannot write " + a.report);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpforge: constraint model transformation chains"};
  app.require_subcommand(1);

  TransformArgs ta;
  auto* tr = app.add_subcommand("transform", "Run a pass chain and emit the target model");
  tr->add_option("--config", ta.config, "JSON pipeline config");
  tr->add_option("--from", ta.from, "Source language")->default_val("scomma");
  tr->add_option("--model", ta.model, "Model file (.scm)");
  tr->add_option("--data", ta.data, "Data file (.scd)");
  tr->add_option("--to", ta.to, "Target: eclipse or pivot")->default_val("eclipse");
  tr->add_option("--chain", ta.chain, "Comma-separated passes");
  tr->add_option("--out", ta.out, "Output file (default: standard output)");
  tr->add_option("--report", ta.report, "Timing report CSV");
  tr->add_option("--max-record-depth", ta.maxRecordDepth, "Deepest record-array nesting accepted")->default_val(2);

  std::string checkModel, checkData;
  auto* ck = app.add_subcommand("check", "Parse, inject and check a model");
  ck->add_option("model", checkModel, "Model file")->required();
  ck->add_option("data", checkData, "Data file")->required();

  SolveArgs sa;
  auto* so = app.add_subcommand("solve", "Enumerate all solutions of a small instance");
  so->add_option("model", sa.model, "Model file")->required();
  so->add_option("data", sa.data, "Data file")->required();
  so->add_option("--cap", sa.cap, "Largest search space enumerated")->default_val(1e7);
  so->add_option("--universe", sa.universe, "Largest set universe")->default_val(6);
  so->add_option("--set", sa.overrides, "Constant override name=value");
  so->add_flag("--count", sa.count, "Print only the number of solutions");

  BenchArgs ba;
  auto* be = app.add_subcommand("bench", "Time the pipeline over a generated family");
  be->add_option("--family", ba.family, "nqueens or golfers")->default_val("nqueens");
  be->add_option("--sizes", ba.sizes, "Instance sizes")->delimiter(',')->required();
  be->add_option("--chain", ba.chain, "Comma-separated passes");
  be->add_option("--to", ba.to, "Target: eclipse or pivot")->default_val("eclipse");
  be->add_option("--table", ba.table, "Report layout: 1 or 2")->check(CLI::IsMember({1, 2}))->default_val(2);
  be->add_option("--report", ba.report, "Write the CSV here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*tr) return transform(ta);
  if (*ck) return pipeline::check_cmd(checkModel, checkData, std::cout, std::cerr);
  if (*so) return solve(sa);
  return bench(ba);
}
