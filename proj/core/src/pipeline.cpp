#include "cpforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cpforge/checker.hpp"
#include "cpforge/eclipse.hpp"
#include "cpforge/inject.hpp"
#include "cpforge/parser.hpp"

namespace cpforge::pipeline {

using passes::PassId;

std::optional<Target> target_from_token(const std::string& t) {
  if (t == "eclipse") return Target::Eclipse;
  if (t == "pivot") return Target::Pivot;
  return std::nullopt;
}

const char* token(Target t) { return t == Target::Eclipse ? "eclipse" : "pivot"; }

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  if (!text.empty() && text.back() != '\n') ++n;
  return n;
}

// ---------------------------------------------------------------------------
// config

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed config " + path.string() + ": " + e.what());
  }
  auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  auto text = [&](const char* key, bool required) -> std::optional<std::string> {
    if (!j.contains(key)) {
      if (required) throw std::invalid_argument(std::string("config lacks \"") + key + "\"");
      return std::nullopt;
    }
    if (!j[key].is_string()) throw std::invalid_argument(std::string("config \"") + key + "\" must be a string");
    return j[key].get<std::string>();
  };

  PipelineConfig c;
  c.model = resolve(*text("source", true));
  c.data = resolve(*text("data", true));
  if (auto t = text("target", false)) {
    auto target = target_from_token(*t);
    if (!target) throw std::invalid_argument("unknown target '" + *t + "'");
    c.target = *target;
  }
  if (j.contains("chain")) {
    if (!j["chain"].is_array()) throw std::invalid_argument("config \"chain\" must be a list");
    for (const auto& p : j["chain"]) {
      if (!p.is_string()) throw std::invalid_argument("config \"chain\" entries must be strings");
      auto id = passes::pass_from_token(p.get<std::string>());
      if (!id) throw std::invalid_argument("unknown pass '" + p.get<std::string>() + "'");
      c.chain.push_back(*id);
    }
  }
  if (auto o = text("out", false)) c.out = resolve(*o);
  if (auto r = text("report", false)) c.report = resolve(*r);
  return c;
}

// ---------------------------------------------------------------------------
// reports

std::optional<double> StageReport::group(const std::vector<PassId>& g) const {
  std::optional<double> sum;
  for (const auto& t : passes)
    if (std::find(g.begin(), g.end(), t.id) != g.end()) sum = sum.value_or(0) + t.seconds;
  return sum;
}

double StageReport::total() const {
  double t = inject + sToP + extract + pToE.value_or(0);
  for (const auto& p : passes) t += p.seconds;
  return t;
}

const std::vector<PassId>& comp_passes() {
  static const std::vector<PassId> g{PassId::FlattenClasses, PassId::FlattenRecords};
  return g;
}
const std::vector<PassId>& enum_passes() {
  static const std::vector<PassId> g{PassId::RemoveEnums};
  return g;
}
const std::vector<PassId>& forall_passes() {
  static const std::vector<PassId> g{PassId::RemoveIf, PassId::UnrollLoops, PassId::SimplifyConstants,
                                     PassId::FlattenMatrices};
  return g;
}

namespace {

std::string seconds(std::optional<double> s) {
  if (!s) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *s);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::string table1_csv(const std::vector<StageReport>& rows) {
  std::ostringstream os;
  os << "Problems,Lines,Inject,s-to-P,Comp,Enum,P-to-E,Extract,Total,Lines\n";
  for (const auto& r : rows) {
    os << csv_field(r.problem) << "," << r.inputLines << "," << seconds(r.inject) << "," << seconds(r.sToP) << ","
       << seconds(r.group(comp_passes())) << "," << seconds(r.group(enum_passes())) << "," << seconds(r.pToE) << ","
       << seconds(r.extract) << "," << seconds(r.total()) << "," << r.outputLines << "\n";
  }
  return os.str();
}

std::string table2_csv(const std::vector<StageReport>& rows) {
  std::ostringstream os;
  os << "Problems,Inject,s-to-P,Comp,Forall,P-to-E,Extract,Total,Lines,Total/Lines\n";
  for (const auto& r : rows) {
    std::optional<double> ratio;
    if (r.outputLines) ratio = r.total() / static_cast<double>(r.outputLines);
    os << csv_field(r.problem) << "," << seconds(r.inject) << "," << seconds(r.sToP) << ","
       << seconds(r.group(comp_passes())) << "," << seconds(r.group(forall_passes())) << "," << seconds(r.pToE)
       << "," << seconds(r.extract) << "," << seconds(r.total()) << "," << r.outputLines << "," << seconds(ratio)
       << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// run

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Problem syntax_problem(const SyntaxError& e) { return Problem{Severity::Error, e.where().str(), e.message()}; }

Problem inject_problem(const InjectError& e) { return Problem{Severity::Error, e.where().str(), e.message()}; }

// Everything after reading: the file writers wrap this.
RunOutcome stages(const std::string& problem, const std::string& modelText, const std::string& dataText,
                  const std::string& modelFile, const std::string& dataFile, Target target,
                  const std::vector<PassId>& chain, const passes::Options& opts) {
  RunOutcome out;
  StageReport& r = out.report;
  r.problem = problem;
  r.inputLines = count_lines(modelText) + count_lines(dataText);

  frontend::SourceAst ast;
  auto t0 = Clock::now();
  try {
    ast.data = frontend::parse_data(dataText, dataFile);
    ast.model = frontend::parse_model(modelText, modelFile);
  } catch (const SyntaxError& e) {
    out.problems.push_back(syntax_problem(e));
    out.exitCode = kExitModelErrors;
    return out;
  }
  r.inject = since(t0);

  pivot::PivotModel model;
  t0 = Clock::now();
  try {
    model = frontend::inject(ast);
  } catch (const InjectError& e) {
    out.problems.push_back(inject_problem(e));
    out.exitCode = kExitModelErrors;
    return out;
  }
  out.problems = checker::check(model);
  r.sToP = since(t0);
  if (r.problem.empty()) r.problem = model.name;
  if (has_errors(out.problems)) {
    out.exitCode = kExitModelErrors;
    return out;
  }

  try {
    auto result = passes::run_chain(model, chain, opts);
    r.passes = result.timings;
    for (auto& w : result.warnings) out.problems.push_back(std::move(w));
    model = std::move(result.model);

    if (target == Target::Eclipse) {
      t0 = Clock::now();
      auto ecl = eclipse::to_eclipse(model);
      r.pToE = since(t0);
      t0 = Clock::now();
      out.output = eclipse::emit(ecl);
      r.extract = since(t0);
    } else {
      t0 = Clock::now();
      auto src = frontend::extract_source(model);
      out.output = src.str();
      r.extract = since(t0);
    }
  } catch (const PassError& e) {
    out.problems.push_back(e.to_problem());
    out.message = e.what();
    out.exitCode = kExitPassErrors;
    return out;
  }
  r.outputLines = count_lines(out.output);
  return out;
}

}  // namespace

RunOutcome run_text(const std::string& problem, const std::string& modelText, const std::string& dataText,
                    Target target, const std::vector<PassId>& chain, const passes::Options& opts) {
  return stages(problem, modelText, dataText, "<model>", "<data>", target, chain, opts);
}

RunOutcome run(const PipelineConfig& config) {
  RunOutcome out;
  if (config.from != "scomma") {
    out.exitCode = kExitUsage;
    out.message = "unsupported source language '" + config.from + "'";
    return out;
  }
  std::string modelText, dataText;
  auto t0 = Clock::now();
  try {
    modelText = frontend::read_file(config.model);
    dataText = frontend::read_file(config.data);
  } catch (const std::exception& e) {
    out.exitCode = kExitUsage;
    out.message = e.what();
    return out;
  }
  double reading = since(t0);

  out = stages("", modelText, dataText, config.model.string(), config.data.string(),
               config.target, config.chain, config.options);
  out.report.inject += reading;
  if (out.exitCode != kExitOk) return out;

  auto write = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) {
      out.exitCode = kExitUsage;
      out.message = "cannot write " + p.string();
    }
    return static_cast<bool>(f);
  };
  if (!config.out.empty()) {
    t0 = Clock::now();
    if (!write(config.out, out.output)) return out;
    out.report.extract += since(t0);
  }
  if (config.report) write(*config.report, table1_csv({out.report}));
  return out;
}

// ---------------------------------------------------------------------------
// generators and bench

Instance nqueens(int n) {
  Instance i;
  i.name = std::to_string(n) + "-Queens";
  i.model =
      "main class Queens {\n"
      " int q[n] in [1, n];\n"
      " constraint noAttack {\n"
      "  forall(i in 1..n) {\n"
      "   forall(j in i+1..n) {\n"
      "    q[i] != q[j];\n"
      "    q[i] - q[j] != i - j;\n"
      "    q[i] - q[j] != j - i;\n"
      "   }\n"
      "  }\n"
      " }\n"
      "}\n";
  i.data = "int n := " + std::to_string(n) + ";\n";
  return i;
}

Instance golfers(int weeks) {
  Instance i;
  i.name = "SocialGolfers-" + std::to_string(weeks);
  i.model =
      "main class SocialGolfers {\n"
      " Week weeks[w];\n"
      " constraint differentGroups {\n"
      "  forall(w1 in 1..w) {\n"
      "   forall(w2 in w1+1..w) {\n"
      "    forall(g1 in 1..g) {\n"
      "     forall(g2 in 1..g) {\n"
      "      card(weeks[w1].groups[g1].players intersect weeks[w2].groups[g2].players) <= 1;\n"
      "     }\n"
      "    }\n"
      "   }\n"
      "  }\n"
      " }\n"
      "}\n"
      "class Week {\n"
      " Group groups[g];\n"
      " constraint playOncePerWeek {\n"
      "  forall(g1 in 1..g) {\n"
      "   forall(g2 in g1+1..g) {\n"
      "    card(groups[g1].players intersect groups[g2].players) = 0;\n"
      "   }\n"
      "  }\n"
      " }\n"
      "}\n"
      "class Group {\n"
      " Name set players;\n"
      " constraint groupSize {\n"
      "  card(players) = s;\n"
      " }\n"
      "}\n";
  i.data =
      "enum Name := {a,b,c,d,e,f,g,h,i};\n"
      "int s := 3;\n"
      "int w := " +
      std::to_string(weeks) +
      ";\n"
      "int g := 3;\n";
  return i;
}

Instance generate(const std::string& family, int size) {
  if (family == "nqueens") return nqueens(size);
  if (family == "golfers") return golfers(size);
  throw std::invalid_argument("unknown family '" + family + "' (expected nqueens or golfers)");
}

BenchResult bench(const std::string& family, const std::vector<int>& sizes, const std::vector<PassId>& chain,
                  Target target) {
  BenchResult out;
  for (int n : sizes) {
    Instance inst = generate(family, n);
    std::vector<PassId> full = chain;
    if (target == Target::Eclipse) {
      auto has = [&](PassId id) { return std::find(chain.begin(), chain.end(), id) != chain.end(); };
      std::vector<PassId> prefix;
      if (!has(PassId::FlattenClasses)) prefix.push_back(PassId::FlattenClasses);
      if (!has(PassId::FlattenRecords)) prefix.push_back(PassId::FlattenRecords);
      if (!has(PassId::RemoveEnums) && inst.data.find("enum ") != std::string::npos)
        prefix.push_back(PassId::RemoveEnums);
      full.insert(full.begin(), prefix.begin(), prefix.end());
    }
    RunOutcome r = run_text(inst.name, inst.model, inst.data, target, full);
    if (r.exitCode != kExitOk) {
      out.exitCode = r.exitCode;
      out.message = inst.name + ": " + (r.message.empty() && !r.problems.empty() ? r.problems.front().str() : r.message);
      return out;
    }
    out.rows.push_back(std::move(r.report));
  }
  return out;
}

int check_cmd(const std::filesystem::path& model, const std::filesystem::path& data, std::ostream& out,
              std::ostream& err) {
  std::string modelText, dataText;
  try {
    modelText = frontend::read_file(model);
    dataText = frontend::read_file(data);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<Problem> problems;
  try {
    auto p = frontend::load(modelText, dataText, model.string(), data.string());
    problems = checker::check(p);
  } catch (const SyntaxError& e) {
    problems.push_back(syntax_problem(e));
  } catch (const InjectError& e) {
    problems.push_back(inject_problem(e));
  }
  for (const auto& p : problems) out << p.str() << "\n";
  return has_errors(problems) ? kExitModelErrors : kExitOk;
}

}  // namespace cpforge::pipeline
