#include "cases.hpp"

#include <stdexcept>

#include "corpus.hpp"
#include "cpforge/checker.hpp"
#include "cpforge/printer.hpp"
#include "generator.hpp"

namespace reftest {

using namespace cpforge;
using namespace cpforge::pivot;
using passes::PassId;

namespace {

std::string corpus_text(const std::string& file) { return frontend::read_file(reftest::corpus_file(file)); }

const std::string kSmallGolfers = "enum Name := {a, b, c, d};\nint s := 2;\nint w := 2;\nint g := 2;\n";
const std::string kColours =
    "main class Colouring {\n Colour a;\n Colour b in {red, green};\n Colour c;\n int set used in [1, 3];\n"
    " constraint differ {\n  a != b;\n  b != c;\n  card(used) >= 2;\n  not (a = Colour.blue and c = Colour.blue);\n"
    " }\n}\n";

}  // namespace

const std::vector<Case>& hand_written() {
  const std::vector<PassId> comp = {PassId::FlattenClasses, PassId::FlattenRecords};
  const std::vector<PassId> structural = {PassId::FlattenClasses, PassId::FlattenRecords, PassId::RemoveEnums};
  auto upto_unroll = structural;
  upto_unroll.insert(upto_unroll.end(), {PassId::RemoveIf, PassId::UnrollLoops});
  const std::string golfers = corpus_text("golfers.scm");
  const std::string engine = corpus_text("engine.scm");
  const std::string engineData = corpus_text("engine.scd");
  const std::string latin = corpus_text("latin.scm");
  const std::string queens = corpus_text("queens.scm");

  static const std::vector<Case> cases = {
      // flatten-classes
      {"golfers", PassId::FlattenClasses, golfers, kSmallGolfers, {}},
      {"engine", PassId::FlattenClasses, engine, engineData, {}},
      {"inheritanceArray", PassId::FlattenClasses,
       "abstract class Base {\n int v in [1, 3];\n}\nclass Leaf extends Base {\n bool on;\n constraint c {\n"
       "  on implies v = 3;\n }\n}\nmain class M {\n Leaf leaves[2];\n constraint m {\n  leaves[1].v < leaves[2].v;\n"
       " }\n}\n",
       "", {}},
      {"nestedArrays", PassId::FlattenClasses,
       "class Cell {\n int v in [1, 2];\n}\nclass Row {\n Cell cells[2];\n constraint r {\n"
       "  cells[1].v != cells[2].v;\n }\n}\nmain class Grid {\n Row rows[2];\n constraint g {\n"
       "  rows[1].cells[1].v != rows[2].cells[1].v;\n }\n}\n",
       "", {}},
      {"classConstant", PassId::FlattenClasses,
       "class P {\n int lim := 2;\n int v in [1, 3];\n constraint c {\n  v <= lim;\n }\n}\nmain class M {\n P p;\n"
       " P q;\n constraint m {\n  p.v != q.v;\n }\n}\n",
       "", {}},
      // flatten-records
      {"slots", PassId::FlattenRecords, corpus_text("slots.scm"), "int k := 2;\nint horizon := 3;\n", {}},
      {"golfers", PassId::FlattenRecords, golfers, kSmallGolfers, {PassId::FlattenClasses}},
      {"engine", PassId::FlattenRecords, engine, engineData, {PassId::FlattenClasses}},
      {"nestedRecordArrays", PassId::FlattenRecords,
       "record a[2] {\n record b[2] {\n  int v in [1, 2];\n }\n constraint c {\n  b[1].v != b[2].v;\n }\n}\n"
       "constraint top {\n a[1].b[1].v = a[2].b[2].v;\n}\n",
       "", {}},
      {"recordWithArray", PassId::FlattenRecords,
       "record r[2] {\n int v[2] in [1, 2];\n constraint c {\n  v[1] != v[2];\n }\n}\nconstraint top {\n"
       " r[1].v[1] = r[2].v[2];\n}\n",
       "", {}},
      // remove-enums
      {"colours", PassId::RemoveEnums, kColours, "enum Colour := {red, green, blue};\n", comp},
      {"golfers", PassId::RemoveEnums, golfers, kSmallGolfers, comp},
      {"engine", PassId::RemoveEnums, engine, engineData, comp},
      {"enumArray", PassId::RemoveEnums,
       "Dir d[3] in {north, east, south};\nconstraint c {\n forall(i in 1..2) {\n  d[i] != d[i+1];\n }\n"
       " d[1] = Dir.east;\n}\n",
       "enum Dir := {north, east, south, west};\n", {}},
      {"enumInIf", PassId::RemoveEnums,
       "Dir x;\nDir y;\nconstraint c {\n if (x = north) {\n  y = west;\n } else {\n  y != x;\n }\n}\n",
       "enum Dir := {north, east, south, west};\n", {}},
      // remove-if
      {"engine", PassId::RemoveIf, engine, engineData, {}},
      {"nestedIf", PassId::RemoveIf,
       "int x in [1, 3];\nint y in [1, 3];\nbool b;\nconstraint c {\n if (b) {\n  if (x < y) {\n   x = 1;\n  } else {\n"
       "   y = 1;\n  }\n } else {\n  x = y;\n }\n}\n",
       "", {}},
      {"ifNoElse", PassId::RemoveIf,
       "int x in [1, 4];\nint y in [1, 4];\nconstraint c {\n if (x > 2) {\n  y > 2;\n  y != x;\n }\n}\n", "", {}},
      {"ifInForall", PassId::RemoveIf,
       "int x[3] in [1, 3];\nconstraint c {\n forall(i in 1..2) {\n  if (x[i] = 1) {\n   x[i+1] = 2;\n  } else {\n"
       "   x[i+1] != 2;\n  }\n }\n}\n",
       "", {}},
      {"ifTwoBranches", PassId::RemoveIf,
       "bool p;\nbool q;\nint x in [0, 2];\nconstraint c {\n if (p or q) {\n  x >= 1;\n } else {\n  x = 0;\n"
       "  not p;\n }\n}\n",
       "", {}},
      // unroll-loops
      {"queens", PassId::UnrollLoops, queens, "int n := 5;\n", {}},
      {"latin", PassId::UnrollLoops, latin, "int n := 3;\n", {}},
      {"golfers", PassId::UnrollLoops, golfers, kSmallGolfers, structural},
      {"dependentBounds", PassId::UnrollLoops,
       "int x[n] in [1, 3];\nconstraint c {\n forall(i in 1..n) {\n  forall(j in i..n) {\n   x[i] <= x[j];\n  }\n"
       " }\n}\n",
       "int n := 3;\n", {}},
      {"emptyRange", PassId::UnrollLoops,
       "int x[n] in [1, 2];\nconstraint c {\n forall(i in 2..n) {\n  x[i] = 2;\n }\n x[1] = 1;\n}\n", "int n := 1;\n",
       {}},
      // simplify
      {"queens", PassId::SimplifyConstants, queens, "int n := 4;\n", {PassId::RemoveIf, PassId::UnrollLoops}},
      {"golfers", PassId::SimplifyConstants, golfers, kSmallGolfers, upto_unroll},
      {"latin", PassId::SimplifyConstants, latin, "int n := 2;\n", {PassId::UnrollLoops}},
      {"arith", PassId::SimplifyConstants,
       "int x in [0, 3];\nint y in [0, 3];\nconstraint c {\n x + (k*3 - 2*k) >= y - (k - k);\n"
       " x * (k / 2) != y + -1 * k;\n}\n",
       "int k := 2;\n", {}},
      {"constantIndex", PassId::SimplifyConstants,
       "int a[3] in [1, 3];\nconstraint c {\n a[k - 1] < a[k];\n a[k + 1] != a[(k*2)/2];\n}\n", "int k := 2;\n", {}},
      // flatten-matrices
      {"latin", PassId::FlattenMatrices, latin, "int n := 3;\n", {}},
      {"latinUnrolled", PassId::FlattenMatrices, latin, "int n := 2;\n", {PassId::UnrollLoops}},
      {"boolMatrix", PassId::FlattenMatrices,
       "bool m[2, 2];\nconstraint c {\n forall(i in 1..2) {\n  m[i, 1] or m[i, 2];\n  not (m[i, 1] and m[i, 2]);\n }\n"
       " m[1, 1] != m[2, 1];\n}\n",
       "", {}},
      {"setMatrix", PassId::FlattenMatrices,
       "int set m[2, 1] in [1, 2];\nconstraint c {\n card(m[1, 1]) = 1;\n card(m[1, 1] intersect m[2, 1]) = 0;\n}\n",
       "", {}},
      {"symbolicShape", PassId::FlattenMatrices,
       "int m[r, c] in [1, 2];\nconstraint g {\n forall(i in 1..r) {\n  forall(j in 1..c-1) {\n"
       "   m[i, j] != m[i, j+1];\n  }\n }\n m[r, c] = 2;\n}\n",
       "int r := 2;\nint c := 2;\n", {}},
  };
  return cases;
}

std::vector<Case> hand_written_for(PassId pass) {
  std::vector<Case> out;
  for (const auto& c : hand_written())
    if (c.pass == pass) out.push_back(c);
  return out;
}

Outcome run_case(const std::string& model, const std::string& data, const std::vector<PassId>& before, PassId pass) {
  PivotModel m = frontend::load(model, data);
  auto problems = checker::check(m);
  if (has_errors(problems)) throw std::runtime_error("checker rejected: " + problems.front().str());
  m = oracle::with_constants(m, {});
  for (auto id : before) m = passes::run_pass(id, m).model;
  auto r = passes::run_pass(pass, m);
  oracle::Instance inst;
  Outcome out;
  out.eq = oracle::equivalent(m, r.model, r.names, inst);
  out.solutions = oracle::solutions(m, inst).size();
  out.dump = print_model(m).str() + "----\n" + print_model(r.model).str();
  if (out.eq.witness) out.dump += "\nwitness: " + oracle::to_string(*out.eq.witness);
  return out;
}

Outcome run_generated(PassId pass, unsigned seed) {
  auto g = generate_model(pass, seed);
  std::vector<PassId> before;
  if (pass == PassId::FlattenRecords && g.model.find("class") != std::string::npos)
    before.push_back(PassId::FlattenClasses);
  Outcome o = run_case(g.model, g.data, before, pass);
  o.dump = g.name + "\n" + g.data + g.model + "----\n" + o.dump;
  return o;
}

const std::vector<Defect>& defects() {
  static const std::vector<Defect> list = {
      {"mismatch", "mismatch.scm:6:5", "operator '+' expects arithmetic operands"},
      {"mismatch", "mismatch.scm:7:3", "card expects a set operand"},
      {"chained", "chained.scm:6:9", "several equalities"},
      {"nonconst", "nonconst.scm:3:2", "domain bound of 'x' is not a constant"},
      {"inverted", "inverted.scm:2:2", "lower bound exceeds upper bound"},
      {"inherit", "inherit.scm:1:1", "inheritance cycle: A -> C -> B -> A"},
      {"compose", "compose.scm:1:1", "composition cycle: Wheel -> Cart -> Wheel"},
  };
  return list;
}

}  // namespace reftest
