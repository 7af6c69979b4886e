// Runs the eight acceptance checks and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>

#include "cases.hpp"
#include "corpus.hpp"
#include "cpforge/checker.hpp"
#include "cpforge/eclipse.hpp"
#include "cpforge/inject.hpp"
#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"
#include "cpforge/pipeline.hpp"
#include "cpforge/pivot_ops.hpp"
#include "cpforge/printer.hpp"
#include "reference.hpp"

using namespace cpforge;
using passes::PassId;
using Clock = std::chrono::steady_clock;

namespace {

const std::vector<PassId> kGolfersChain = {PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums};
const std::vector<PassId> kUnroll = {PassId::RemoveIf, PassId::UnrollLoops, PassId::SimplifyConstants};

// Accumulates the first failure reason of a criterion.
struct Check {
  std::string reason;

  bool ok() const { return reason.empty(); }
  void require(bool cond, const std::string& why) {
    if (!cond && reason.empty()) reason = why;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t loop_depth(const eclipse::ForLoop& f) {
  std::size_t inner = 0;
  for (const auto& a : f.body)
    if (const auto* g = a.as<eclipse::ForLoop>()) inner = std::max(inner, loop_depth(*g));
  return inner + 1;
}

bool card_equals_s(const std::vector<eclipse::Atom>& body) {
  using eclipse::Term;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto* c = body[i].as<eclipse::CardBind>();
    if (!c) continue;
    if (c->out == Term::var("S")) return true;
    if (i + 1 < body.size()) {
      const auto* k = body[i + 1].as<eclipse::ConstraintAtom>();
      if (k && k->expr == Term::infix("#=", c->out, Term::var("S"))) return true;
    }
  }
  return false;
}

pipeline::PipelineConfig golfers_config() {
  pipeline::PipelineConfig c;
  c.model = reftest::corpus_file("golfers.scm");
  c.data = reftest::corpus_file("golfers.scd");
  c.chain = kGolfersChain;
  return c;
}

Check golden_chain() {
  Check c;
  auto t0 = Clock::now();
  auto run = pipeline::run(golfers_config());
  double elapsed = seconds_since(t0);
  c.require(run.exitCode == pipeline::kExitOk, "pipeline failed: " + run.message);
  if (!c.ok()) return c;
  c.require(elapsed < 1.0, "pipeline took " + std::to_string(elapsed) + " s");

  auto m = passes::run_chain(reftest::load_corpus("golfers"), kGolfersChain).model;
  auto e = eclipse::to_eclipse(m);
  c.require(eclipse::emit(e) == run.output, "emitted text differs from the pipeline output");
  c.require(e.predicates.size() == 1, "expected a single predicate");
  if (!c.ok()) return c;
  const auto& body = e.predicates[0].body;
  c.require(body.size() == 8, "predicate body has " + std::to_string(body.size()) + " atoms, wanted 8");
  if (!c.ok()) return c;
  for (std::size_t i = 0; i < 3; ++i) c.require(body[i].is<eclipse::ConstBind>(), "atom " + std::to_string(i) + " is not a dimension binding");
  const auto* sets = body[3].as<eclipse::IntsetsDecl>();
  c.require(sets && *sets == eclipse::IntsetsDecl{"WEEKS_GROUPS_PLAYERS", 12, 1, 9},
            "fourth atom is not intsets(WEEKS_GROUPS_PLAYERS,12,1,9)");
  c.require(body[4].is<eclipse::ListAlias>(), "fifth atom is not the list alias");
  const auto* four = body[5].as<eclipse::ForLoop>();
  c.require(four && loop_depth(*four) == 4, "sixth atom is not a 4-deep loop nest");
  const auto* two = body[6].as<eclipse::ForLoop>();
  c.require(two && loop_depth(*two) == 3 && two->body.size() == 2, "seventh atom is not the weeks block");
  if (two && two->body.size() == 2) {
    const auto* groups = two->body[0].as<eclipse::ForLoop>();
    const auto* inner = two->body[1].as<eclipse::ForLoop>();
    c.require(groups && loop_depth(*groups) == 1 && card_equals_s(groups->body),
              "weeks block does not open with the card = S loop");
    c.require(inner && loop_depth(*inner) == 2, "weeks block has no inner 2-deep nest");
  }
  const auto* label = body[7].as<eclipse::LabelSets>();
  c.require(label && label->sets && label->listVar == "L", "last atom is not label_sets(L)");
  return c;
}

Check intermediate_golden() {
  Check c;
  auto m = passes::run_chain(reftest::load_corpus("golfers"), kGolfersChain).model;
  auto lines = reftest::lines_of(pivot::print_model(m).model);
  c.require(!lines.empty() && lines[0] == "int set weeks_groups_players[w*g] in [1, 9];",
            "first declaration is '" + (lines.empty() ? std::string() : lines[0]) + "'");
  auto at = std::find_if(lines.begin(), lines.end(), [](const std::string& l) { return l.rfind("constraint ", 0) == 0; });
  c.require(at != lines.end() && at + 2 < lines.end(), "no constraint zone");
  if (!c.ok()) return c;
  c.require(*(at + 1) == "  forall(weeks in 1..w) {", "first statement is '" + *(at + 1) + "'");
  c.require(*(at + 2) == "    forall(groups in 1..g) {", "second statement is '" + *(at + 2) + "'");
  return c;
}

Check pass_equivalence() {
  Check c;
  auto t0 = Clock::now();
  for (auto id : passes::all_passes()) {
    auto cases = reftest::hand_written_for(id);
    c.require(cases.size() >= 5, std::string(passes::token(id)) + " has fewer than 5 hand-written models");
    for (const auto& k : cases) {
      auto o = reftest::run_case(k.model, k.data, k.before, k.pass);
      c.require(o.eq.equal, std::string(passes::token(id)) + " changed the solutions of " + k.name);
    }
    for (unsigned seed = 1; seed <= 20; ++seed) {
      auto o = reftest::run_generated(id, seed);
      c.require(o.eq.equal, std::string(passes::token(id)) + " changed the solutions of generated model " +
                                std::to_string(seed));
    }
  }
  double elapsed = seconds_since(t0);
  c.require(elapsed < 300.0, "suite took " + std::to_string(elapsed) + " s");
  return c;
}

Check queens_census() {
  Check c;
  for (int n : {4, 5, 6}) {
    auto m = oracle::with_constants(reftest::load_corpus("queens"), {{"n", n}});
    auto r = passes::run_chain(m, kUnroll);
    std::size_t want = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) want += 3;
    auto got = pivot::census(r.model).constraints;
    c.require(got == want, "n=" + std::to_string(n) + ": " + std::to_string(got) + " constraints, wanted " +
                               std::to_string(want));
    auto count = oracle::solutions(m).size();
    auto ref = reftest::queens_count(n);
    c.require(count == ref, "n=" + std::to_string(n) + ": oracle found " + std::to_string(count) + ", reference " +
                                std::to_string(ref));
  }
  return c;
}

Check scaling() {
  Check c;
  auto b = pipeline::bench("nqueens", {5, 10, 15}, kUnroll);
  c.require(b.exitCode == pipeline::kExitOk && b.rows.size() == 3, "bench failed: " + b.message);
  if (!c.ok()) return c;
  double base = static_cast<double>(b.rows[0].outputLines);
  for (std::size_t i = 1; i < 3; ++i) {
    double k = static_cast<double>(i + 1);
    double predicted = base * k * k;
    double actual = static_cast<double>(b.rows[i].outputLines);
    c.require(actual >= 0.75 * predicted && actual <= 1.25 * predicted,
              "n=" + std::to_string(5 * (i + 1)) + ": " + std::to_string(b.rows[i].outputLines) +
                  " lines, quadratic extrapolation " + std::to_string(predicted));
  }
  auto csv = reftest::lines_of(pipeline::table2_csv(b.rows));
  c.require(!csv.empty() && csv[0] == "Problems,Inject,s-to-P,Comp,Forall,P-to-E,Extract,Total,Lines,Total/Lines",
            "table 2 header differs");
  c.require(csv.size() == 4, "table 2 has " + std::to_string(csv.size()) + " lines");
  return c;
}

std::string tail(const std::string& location) {
  auto slash = location.find_last_of('/');
  return slash == std::string::npos ? location : location.substr(slash + 1);
}

Check checker_corpus() {
  Check c;
  for (const auto& d : reftest::defects()) {
    auto m = frontend::load_files(reftest::corpus_file("defects/" + d.fixture + ".scm"),
                                  reftest::corpus_file("defects/" + d.fixture + ".scd"));
    auto ps = checker::check(m);
    bool hit = std::any_of(ps.begin(), ps.end(), [&](const Problem& p) {
      return p.severity == Severity::Error && tail(p.location) == d.location &&
             p.description.find(d.text) != std::string::npos;
    });
    c.require(hit, d.fixture + ": no error at " + d.location);
  }
  for (const auto& name : reftest::clean_corpus())
    c.require(!has_errors(checker::check(reftest::load_corpus(name))), name + " reports errors");
  return c;
}

Check determinism() {
  Check c;
  auto a = pipeline::run(golfers_config());
  auto b = pipeline::run(golfers_config());
  c.require(a.exitCode == 0 && b.exitCode == 0, "pipeline failed");
  c.require(a.output == b.output, "two runs differ");
#ifdef CPFORGE_TOOL
  {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "cpforge_acceptance";
    fs::create_directories(dir);
    std::string base = std::string("\"") + CPFORGE_TOOL + "\" transform --model \"" +
                       reftest::corpus_file("golfers.scm").string() + "\" --data \"" +
                       reftest::corpus_file("golfers.scd").string() +
                       "\" --chain flatten-classes,flatten-records,remove-enums --out ";
    int ra = std::system((base + "\"" + (dir / "a.ecl").string() + "\"").c_str());
    int rb = std::system((base + "\"" + (dir / "b.ecl").string() + "\"").c_str());
    c.require(ra == 0 && rb == 0, "cpforge transform failed");
    if (ra == 0 && rb == 0) {
      c.require(frontend::read_file(dir / "a.ecl") == frontend::read_file(dir / "b.ecl"),
                "two cpforge transform runs differ");
      c.require(frontend::read_file(dir / "a.ecl") == a.output, "CLI output differs from the library");
    }
    fs::remove_all(dir);
  }
#endif
  std::regex local("\\bV([0-9]+)\\b");
  std::set<int> seen;
  for (auto it = std::sregex_iterator(a.output.begin(), a.output.end(), local); it != std::sregex_iterator(); ++it)
    seen.insert(std::stoi((*it)[1]));
  c.require(!seen.empty() && *seen.begin() == 1, "fresh locals do not start at V1");
  c.require(!seen.empty() && *seen.rbegin() == 12 && seen.size() == 12, "fresh locals do not run V1..V12");
  return c;
}

Check round_trip() {
  Check c;
  for (const auto& name : reftest::clean_corpus()) {
    auto m1 = reftest::load_corpus(name);
    auto t1 = frontend::extract_source(m1);
    auto m2 = frontend::load(t1.model, t1.data);
    auto t2 = frontend::extract_source(m2);
    c.require(m1 == m2, name + ": re-injected model differs");
    c.require(t1.model == t2.model && t1.data == t2.data, name + ": second extraction differs");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"golden chain: golfers predicate structure", golden_chain},
      {"intermediate golden: golfers pivot after composition and enum removal", intermediate_golden},
      {"pass equivalence: 7 passes, hand-written and generated models", pass_equivalence},
      {"constraint census and solution counts for N-Queens 4..6", queens_census},
      {"quadratic line growth of unrolled N-Queens 5/10/15", scaling},
      {"checker corpus: defect fixtures and clean models", checker_corpus},
      {"determinism: byte-identical output, locals V1..V12", determinism},
      {"round trip: extract_source after inject is idempotent", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.reason = std::string("exception: ") + e.what();
    }
    if (!c.ok()) ++failed;
    std::cout << (c.ok() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!c.ok()) std::cout << " (" << c.reason << ")";
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
