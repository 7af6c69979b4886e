// Brute-force solution oracle. Constraints are grounded into a small tree over
// numbered cells and evaluated against every candidate assignment.

#include "cpforge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "cpforge/printer.hpp"
#include "cpforge/scope.hpp"
#include "passes/pass_util.hpp"

namespace cpforge::oracle {

using namespace pivot;

std::string CellKey::str() const {
  std::string s = path;
  if (!indices.empty()) {
    s += "[";
    for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i]);
    s += "]";
  }
  return s;
}

std::string Value::str() const {
  if (!isSet) return std::to_string(scalar);
  std::string s = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) s += (i ? "," : "") + std::to_string(elements[i]);
  return s + "}";
}

std::string to_string(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) {
    if (!s.empty()) s += " ";
    s += k.str() + "=" + v.str();
  }
  return s;
}

namespace {

enum class NodeKind { Const, Undef, Cell, Neg, Not, Bin, Card, Element };

struct Node {
  NodeKind kind = NodeKind::Const;
  BinaryOp op = BinaryOp::Add;
  std::int64_t value = 0;
  int a = -1;
  int b = -1;
  int cell = -1;
  std::vector<int> indices;        // Element: index nodes
  std::vector<std::int64_t> dims;  // Element: array shape
  std::vector<int> cells;          // Element: row-major cells
};

struct CellInfo {
  CellKey key;
  bool isSet = false;
  std::vector<std::int64_t> values;  // scalar candidates, or set universe
};

// Leaf instance container: the features of one object/record instance.
struct Frame {
  std::vector<const Feature*> features;
  std::string path;
  std::vector<std::int64_t> indices;
  bool root = false;  // global or main-class frame; constants there are overridable
};

using Frames = std::vector<Frame>;
using Locals = std::vector<std::pair<std::string, int>>;

std::string join_path(const std::string& prefix, const std::string& name) {
  return prefix.empty() ? name : prefix + "." + name;
}

OracleError unsupported(const std::string& what) { return OracleError(OracleError::Kind::Unsupported, what); }

class Grounder {
 public:
  Grounder(const PivotModel& p, const Instance& inst) : p_(p), inst_(inst), index_(p) {
    Frame global;
    global.root = true;
    for (const auto& e : p.elements)
      if (const auto* f = e.as<Feature>()) global.features.push_back(f);
    roots_.push_back(global);
    if (const auto* main = p.main_class()) {
      Frame m;
      m.root = true;
      m.features = index_.features_of(*main);
      roots_.push_back(m);
    }
  }

  void run() {
    for_each_instance([&](const Frames& fs) { make_cells(fs); });
    finish_domains();
    for_each_instance([&](const Frames& fs) { ground_zones(fs); });
    for (const auto& e : p_.elements)
      if (const auto* pr = e.as<Predicate>()) add_constraints(ground_body(pr->statements, {roots_[0]}, {}));
  }

  std::vector<Node> nodes;
  std::vector<CellInfo> cells;
  std::vector<int> constraints;
  std::int64_t setBase = 0;

 private:
  // ---- instances ----------------------------------------------------------

  // Calls fn with the frame chain of every object/record instance, roots first.
  void for_each_instance(const std::function<void(const Frames&)>& fn) {
    Frames g{roots_[0]};
    fn(g);
    instances_below(g, fn);
    if (roots_.size() > 1) {
      Frames m{roots_[0], roots_[1]};
      fn(m);
      instances_below(m, fn);
    }
  }

  void instances_below(const Frames& fs, const std::function<void(const Frames&)>& fn) {
    if (fs.size() > 32) throw unsupported("instance nesting too deep");
    const Frame& top = fs.back();
    for (const Feature* f : top.features) {
      std::vector<const Feature*> inner;
      std::optional<ArrayDims> array;
      bool lexical = false;
      if (const auto* r = f->as<Record>()) {
        for (const auto& x : r->elements) inner.push_back(&x);
        array = r->array;
        lexical = true;
      } else if (const auto* v = f->as<Variable>()) {
        const ClassType* cls = index_.class_of(*v);
        if (!cls) continue;
        inner = index_.features_of(*cls);
        array = v->array;
      } else {
        continue;
      }
      for (const auto& tuple : tuples(array, fs)) {
        Frame child;
        child.features = inner;
        child.path = join_path(top.path, f->name());
        child.indices = top.indices;
        child.indices.insert(child.indices.end(), tuple.begin(), tuple.end());
        Frames next = lexical ? fs : Frames{roots_[0]};
        next.push_back(std::move(child));
        fn(next);
        instances_below(next, fn);
      }
    }
  }

  std::vector<std::vector<std::int64_t>> tuples(const std::optional<ArrayDims>& array, const Frames& fs) {
    if (!array) return {{}};
    std::int64_t n = constant(array->n, fs);
    std::vector<std::vector<std::int64_t>> out;
    if (!array->m) {
      for (std::int64_t i = 1; i <= n; ++i) out.push_back({i});
      return out;
    }
    std::int64_t m = constant(*array->m, fs);
    for (std::int64_t i = 1; i <= n; ++i)
      for (std::int64_t j = 1; j <= m; ++j) out.push_back({i, j});
    return out;
  }

  // ---- cells --------------------------------------------------------------

  void make_cells(const Frames& fs) {
    const Frame& top = fs.back();
    for (const Feature* f : top.features) {
      const auto* v = f->as<Variable>();
      if (!v || index_.class_of(*v)) continue;
      std::vector<std::int64_t> values = domain_values(*v, fs);
      for (const auto& tuple : tuples(v->array, fs)) {
        CellInfo c;
        c.key.path = join_path(top.path, v->name);
        c.key.indices = top.indices;
        c.key.indices.insert(c.key.indices.end(), tuple.begin(), tuple.end());
        c.isSet = v->isSet;
        c.values = values;
        ids_[c.key] = static_cast<int>(cells.size());
        cells.push_back(std::move(c));
      }
    }
  }

  std::vector<std::int64_t> domain_values(const Variable& v, const Frames& fs) {
    if (v.type.kind == TypeRef::Kind::Real) throw unsupported("real variable '" + v.name + "'");
    std::vector<std::int64_t> values;
    if (v.domain) {
      if (const auto* i = std::get_if<Interval>(&v.domain->node)) {
        std::int64_t lo = constant(i->lower, fs), hi = constant(i->upper, fs);
        if (hi >= lo && static_cast<std::uint64_t>(hi - lo) >= inst_.maxDomainWidth)
          throw OracleError(OracleError::Kind::SearchSpaceExceeded, "domain of '" + v.name + "' is too wide");
        for (std::int64_t x = lo; x <= hi; ++x) values.push_back(x);
      } else {
        for (const auto& x : std::get<ExplicitSet>(v.domain->node).values) values.push_back(constant(x, fs));
      }
    } else if (v.type.kind == TypeRef::Kind::Bool) {
      values = {0, 1};
    } else if (v.type.kind == TypeRef::Kind::Named) {
      const EnumType* t = index_.find_enum(v.type.name);
      if (!t) throw unsupported("variable '" + v.name + "' of unknown type '" + v.type.name + "'");
      for (std::size_t i = 1; i <= t->literals.size(); ++i) values.push_back(static_cast<std::int64_t>(i));
    } else {
      throw OracleError(OracleError::Kind::UnboundedDomain, "variable '" + v.name + "' has no domain");
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (v.isSet && values.size() > inst_.maxUniverse)
      throw OracleError(OracleError::Kind::SearchSpaceExceeded,
                        "universe of set '" + v.name + "' has " + std::to_string(values.size()) + " values");
    return values;
  }

  // Set cells take every subset of their universe, encoded as bit masks over
  // a common base so masks of different variables are comparable.
  void finish_domains() {
    bool any = false;
    std::int64_t lo = 0, hi = 0;
    for (const auto& c : cells) {
      if (!c.isSet || c.values.empty()) continue;
      lo = any ? std::min(lo, c.values.front()) : c.values.front();
      hi = any ? std::max(hi, c.values.back()) : c.values.back();
      any = true;
    }
    if (any && hi - lo >= 63) throw unsupported("set values span more than 63");
    setBase = lo;
    for (auto& c : cells) {
      if (!c.isSet) continue;
      std::vector<std::int64_t> masks;
      std::size_t n = c.values.size();
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << n); ++sub) {
        std::uint64_t m = 0;
        for (std::size_t b = 0; b < n; ++b)
          if (sub >> b & 1) m |= std::uint64_t{1} << (c.values[b] - setBase);
        masks.push_back(static_cast<std::int64_t>(m));
      }
      c.values = std::move(masks);
    }
  }

  // ---- constraints --------------------------------------------------------

  void ground_zones(const Frames& fs) {
    for (const Feature* f : fs.back().features)
      if (const auto* z = f->as<ConstraintZone>()) add_constraints(ground_body(z->statements, fs, {}));
  }

  void add_constraints(const std::vector<int>& cs) {
    for (int c : cs) {
      const Node& n = nodes[c];
      if (n.kind == NodeKind::Const && n.value != 0) continue;
      constraints.push_back(c);
    }
  }

  std::vector<int> ground_body(const std::vector<Statement>& body, const Frames& fs, Locals locals) {
    std::vector<int> out;
    for (const auto& s : body) {
      if (const auto* c = s.as<Constraint>()) {
        out.push_back(ground(c->expr, fs, locals));
      } else if (const auto* f = s.as<Forall>()) {
        std::int64_t lo = constant(f->lower, fs, locals), hi = constant(f->upper, fs, locals);
        for (std::int64_t k = lo; k <= hi; ++k) {
          Locals inner = locals;
          inner.emplace_back(f->index, konst(k));
          for (int x : ground_body(f->body, fs, inner)) out.push_back(x);
        }
      } else if (const auto* i = s.as<IfStmt>()) {
        int cond = ground(i->cond, fs, locals);
        int then = conj(ground_body(i->thenBody, fs, locals));
        int e = bin(BinaryOp::Implies, cond, then);
        if (i->elseBody) {
          int otherwise = conj(ground_body(*i->elseBody, fs, locals));
          e = bin(BinaryOp::And, e, bin(BinaryOp::Implies, un(NodeKind::Not, cond), otherwise));
        }
        out.push_back(e);
      } else if (const auto* l = s.as<Let>()) {
        locals.emplace_back(l->name, ground(l->value, fs, locals));
      }
    }
    return out;
  }

  int conj(const std::vector<int>& xs) {
    int acc = konst(1);
    for (int x : xs) acc = bin(BinaryOp::And, acc, x);
    return acc;
  }

  std::int64_t constant(const Expr& e, const Frames& fs, const Locals& locals = {}) {
    int n = ground(e, fs, locals);
    if (nodes[n].kind != NodeKind::Const)
      throw unsupported("expression '" + to_source(e) + "' is not constant");
    return nodes[n].value;
  }

  int ground(const Expr& e, const Frames& fs, const Locals& locals) {
    return std::visit(
        overloaded{
            [&](const IntLit& i) { return konst(i.value); },
            [&](const RealLit&) -> int { throw unsupported("real literal"); },
            [&](const BoolLit& b) { return konst(b.value ? 1 : 0); },
            [&](const EnumLit& l) {
              const EnumType* t = index_.find_enum(l.enumName);
              if (!t) throw unsupported("unknown enum '" + l.enumName + "'");
              auto it = std::find(t->literals.begin(), t->literals.end(), l.literal);
              if (it == t->literals.end()) throw unsupported("unknown enum literal '" + l.literal + "'");
              return konst(static_cast<std::int64_t>(it - t->literals.begin()) + 1);
            },
            [&](const VarRef& r) { return reference(r, fs, locals); },
            [&](const Unary& u) {
              int a = ground(*u.arg, fs, locals);
              return un(u.op == UnaryOp::Neg ? NodeKind::Neg : NodeKind::Not, a);
            },
            [&](const Binary& b) { return bin(b.op, ground(*b.lhs, fs, locals), ground(*b.rhs, fs, locals)); },
            [&](const Card& c) { return un(NodeKind::Card, ground(*c.arg, fs, locals)); },
        },
        e.node);
  }

  int reference(const VarRef& r, const Frames& fs, const Locals& locals) {
    const AccessStep& head = r.path.front();
    if (r.path.size() == 1 && head.indices.empty()) {
      for (auto it = locals.rbegin(); it != locals.rend(); ++it)
        if (it->first == head.name) return it->second;
    }
    for (std::size_t level = fs.size(); level-- > 0;) {
      const Feature* f = find(fs[level].features, head.name);
      if (!f) continue;
      Frames scope(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(level) + 1);
      return follow(r, 0, f, scope.back(), scope, fs, locals);
    }
    if (r.path.size() == 1 && head.indices.empty()) {
      if (auto lit = index_.enum_literal(head.name)) return konst(lit->second);
    }
    throw unsupported("unresolved name '" + head.name + "'");
  }

  static const Feature* find(const std::vector<const Feature*>& fs, const std::string& name) {
    for (const Feature* f : fs)
      if (f->name() == name) return f;
    return nullptr;
  }

  // Walks the access path from step `i`, whose declaration `f` lives in
  // `container`. `scope` is the lexical scope of that declaration.
  int follow(const VarRef& r, std::size_t i, const Feature* f, const Frame& container, const Frames& scope,
             const Frames& fs, const Locals& locals) {
    const AccessStep& step = r.path[i];
    bool last = i + 1 == r.path.size();
    std::string path = join_path(container.path, f->name());

    if (const auto* k = f->as<Constant>()) {
      if (!last || !step.indices.empty()) throw unsupported("access into constant '" + k->name + "'");
      if (container.root) {
        auto it = inst_.constants.find(k->name);
        if (it != inst_.constants.end()) return konst(it->second);
      }
      return ground(k->value, scope, {});
    }

    std::vector<int> idx;
    for (const auto& x : step.indices) idx.push_back(ground(x, fs, locals));

    const auto* v = f->as<Variable>();
    const ClassType* cls = v ? index_.class_of(*v) : nullptr;
    if (v && !cls) {
      if (!last) throw unsupported("access into scalar '" + v->name + "'");
      return cell_ref(path, container.indices, *v, idx, scope);
    }

    // Object or record: step into one instance.
    std::optional<ArrayDims> array = v ? v->array : f->as<Record>()->array;
    if (last) throw unsupported("object '" + f->name() + "' used as a value");
    if (idx.size() != (array ? (array->m ? 2u : 1u) : 0u))
      throw unsupported("wrong number of indices on '" + f->name() + "'");
    Frame next;
    next.path = path;
    next.indices = container.indices;
    for (int n : idx) {
      if (nodes[n].kind != NodeKind::Const) throw unsupported("variable index into object array '" + f->name() + "'");
      next.indices.push_back(nodes[n].value);
    }
    Frames inner;
    if (cls) {
      next.features = index_.features_of(*cls);
      inner = {roots_[0]};
    } else {
      for (const auto& x : f->as<Record>()->elements) next.features.push_back(&x);
      inner = scope;
    }
    inner.push_back(next);
    const Feature* member = find(next.features, r.path[i + 1].name);
    if (!member) throw unsupported("no member '" + r.path[i + 1].name + "' in '" + f->name() + "'");
    return follow(r, i + 1, member, inner.back(), inner, fs, locals);
  }

  int cell_ref(const std::string& path, const std::vector<std::int64_t>& prefix, const Variable& v,
               const std::vector<int>& idx, const Frames& scope) {
    std::size_t arity = v.array ? (v.array->m ? 2 : 1) : 0;
    if (idx.size() != arity) throw unsupported("wrong number of indices on '" + v.name + "'");
    bool fixed = std::all_of(idx.begin(), idx.end(), [&](int n) { return nodes[n].kind == NodeKind::Const; });
    if (fixed) {
      CellKey key{path, prefix};
      for (int n : idx) key.indices.push_back(nodes[n].value);
      auto it = ids_.find(key);
      if (it == ids_.end()) return undef_node();
      Node c;
      c.kind = NodeKind::Cell;
      c.cell = it->second;
      return add(std::move(c));
    }
    Node el;
    el.kind = NodeKind::Element;
    el.indices = idx;
    for (const auto& t : tuples(v.array, scope)) {
      CellKey key{path, prefix};
      key.indices.insert(key.indices.end(), t.begin(), t.end());
      el.cells.push_back(ids_.at(key));
    }
    el.dims.push_back(constant(v.array->n, scope));
    if (v.array->m) el.dims.push_back(constant(*v.array->m, scope));
    return add(std::move(el));
  }

  // ---- node construction with folding -------------------------------------

  int add(Node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  int undef_node() {
    Node n;
    n.kind = NodeKind::Undef;
    return add(std::move(n));
  }

  int konst(std::int64_t v) {
    Node n;
    n.value = v;
    return add(std::move(n));
  }

  int fold(Node n) {
    auto is_const = [&](int x) { return x < 0 || nodes[x].kind == NodeKind::Const; };
    int id = add(std::move(n));
    if (is_const(nodes[id].a) && is_const(nodes[id].b)) {
      bool undef = false;
      std::int64_t v = eval_node(nodes, id, {}, undef);
      nodes.pop_back();
      if (undef) return undef_node();
      return konst(v);
    }
    return id;
  }

  int un(NodeKind k, int a) {
    Node n;
    n.kind = k;
    n.a = a;
    return fold(std::move(n));
  }

  int bin(BinaryOp op, int a, int b) {
    Node n;
    n.kind = NodeKind::Bin;
    n.op = op;
    n.a = a;
    n.b = b;
    return fold(std::move(n));
  }

 public:
  static std::int64_t eval_node(const std::vector<Node>& ns, int id, const std::vector<std::int64_t>& asg,
                                bool& undef);

 private:
  const PivotModel& p_;
  const Instance& inst_;
  ModelIndex index_;
  std::vector<Frame> roots_;
  std::map<CellKey, int> ids_;
};

std::int64_t Grounder::eval_node(const std::vector<Node>& ns, int id, const std::vector<std::int64_t>& asg,
                                 bool& undef) {
  const Node& n = ns[id];
  switch (n.kind) {
    case NodeKind::Const: return n.value;
    case NodeKind::Undef: undef = true; return 0;
    case NodeKind::Cell: return asg[n.cell];
    case NodeKind::Neg: return -eval_node(ns, n.a, asg, undef);
    case NodeKind::Not: return eval_node(ns, n.a, asg, undef) ? 0 : 1;
    case NodeKind::Card: return std::popcount(static_cast<std::uint64_t>(eval_node(ns, n.a, asg, undef)));
    case NodeKind::Element: {
      std::size_t flat = 0;
      for (std::size_t k = 0; k < n.indices.size(); ++k) {
        std::int64_t i = eval_node(ns, n.indices[k], asg, undef);
        if (i < 1 || i > n.dims[k]) {
          undef = true;
          return 0;
        }
        flat = flat * static_cast<std::size_t>(n.dims[k]) + static_cast<std::size_t>(i - 1);
      }
      return asg[n.cells[flat]];
    }
    case NodeKind::Bin: break;
  }
  std::int64_t a = eval_node(ns, n.a, asg, undef);
  std::int64_t b = eval_node(ns, n.b, asg, undef);
  switch (n.op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0) {
        undef = true;
        return 0;
      }
      return a / b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::And: return a && b;
    case BinaryOp::Or: return a || b;
    case BinaryOp::Implies: return !a || b;
    case BinaryOp::Intersect: return a & b;
  }
  return 0;
}

int max_cell(const std::vector<Node>& ns, int id) {
  const Node& n = ns[id];
  int m = n.cell;
  for (int c : n.cells) m = std::max(m, c);
  if (n.a >= 0) m = std::max(m, max_cell(ns, n.a));
  if (n.b >= 0) m = std::max(m, max_cell(ns, n.b));
  for (int i : n.indices) m = std::max(m, max_cell(ns, i));
  return m;
}

class Search {
 public:
  explicit Search(const Grounder& g) : g_(g), asg_(g.cells.size(), 0), byCell_(g.cells.size()) {
    for (int c : g.constraints) {
      int m = max_cell(g.nodes, c);
      (m < 0 ? always_ : byCell_[m]).push_back(c);
    }
  }

  std::vector<std::vector<std::int64_t>> run(Strategy s) {
    if (!holds(always_)) return {};
    if (s == Strategy::Pruning) {
      dfs(0);
    } else {
      generate();
    }
    return found_;
  }

 private:
  bool holds(const std::vector<int>& cs) const {
    for (int c : cs) {
      bool undef = false;
      std::int64_t v = Grounder::eval_node(g_.nodes, c, asg_, undef);
      if (undef || !v) return false;
    }
    return true;
  }

  void dfs(std::size_t d) {
    if (d == asg_.size()) {
      found_.push_back(asg_);
      return;
    }
    for (std::int64_t v : g_.cells[d].values) {
      asg_[d] = v;
      if (holds(byCell_[d])) dfs(d + 1);
    }
  }

  void generate() {
    std::size_t n = asg_.size();
    for (const auto& c : g_.cells)
      if (c.values.empty()) return;
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t i = 0; i < n; ++i) asg_[i] = g_.cells[i].values[0];
    while (true) {
      if (holds(g_.constraints)) found_.push_back(asg_);
      std::size_t k = 0;
      while (k < n && ++pos[k] == g_.cells[k].values.size()) {
        pos[k] = 0;
        asg_[k] = g_.cells[k].values[0];
        ++k;
      }
      if (k == n) return;
      asg_[k] = g_.cells[k].values[pos[k]];
    }
  }

  const Grounder& g_;
  std::vector<std::int64_t> asg_;
  std::vector<std::vector<int>> byCell_;
  std::vector<int> always_;
  std::vector<std::vector<std::int64_t>> found_;
};

double space_of(const Grounder& g) {
  double space = 1;
  for (const auto& c : g.cells) space *= static_cast<double>(c.values.size());
  return space;
}

ConstEnv dims_env(const PivotModel& a, const PivotModel& b, const ConstEnv& overrides) {
  ConstEnv env = passes::detail::scoped_constants(a);
  for (const auto& [k, v] : passes::detail::scoped_constants(b)) env[k] = v;
  for (const auto& [k, v] : constant_env(b, overrides)) env[k] = v;
  return env;
}

std::vector<Assignment> translated(const SolutionSet& s, const std::vector<passes::NameMap>& maps,
                                   const ConstEnv& env) {
  std::vector<Assignment> out;
  for (const auto& a : s.solutions) {
    Assignment t = a;
    for (const auto& m : maps) t = translate(t, m, env);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PivotModel with_constants(const PivotModel& p, const ConstEnv& overrides) {
  PivotModel out = p;
  auto bake = [&](Feature& f) {
    if (auto* k = f.as<Constant>()) {
      auto it = overrides.find(k->name);
      if (it != overrides.end()) k->value = int_lit(it->second, k->value.loc);
    }
  };
  for (auto& e : out.elements) {
    if (auto* f = e.as<Feature>()) bake(*f);
    if (auto* c = e.as<ClassType>(); c && c->isMain)
      for (auto& f : c->features) bake(f);
  }
  return out;
}

double search_space(const PivotModel& p, const Instance& inst) {
  Grounder g(p, inst);
  g.run();
  return space_of(g);
}

SolutionSet solutions(const PivotModel& p, const Instance& inst, Strategy strategy) {
  Grounder g(p, inst);
  g.run();
  double space = space_of(g);
  if (space > inst.maxSearchSpace) {
    std::ostringstream msg;
    msg << "search space " << space << " exceeds " << inst.maxSearchSpace;
    throw OracleError(OracleError::Kind::SearchSpaceExceeded, msg.str());
  }

  // Cells are numbered in declaration order; solutions are reported by key.
  std::vector<std::size_t> order(g.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return g.cells[x].key < g.cells[y].key; });

  SolutionSet out;
  for (const auto& raw : Search(g).run(strategy)) {
    Assignment a;
    for (std::size_t i : order) {
      const CellInfo& c = g.cells[i];
      Value v;
      v.isSet = c.isSet;
      if (c.isSet) {
        auto mask = static_cast<std::uint64_t>(raw[i]);
        for (int b = 0; b < 64; ++b)
          if (mask >> b & 1) v.elements.push_back(g.setBase + b);
      } else {
        v.scalar = raw[i];
      }
      a.emplace_back(c.key, std::move(v));
    }
    out.solutions.push_back(std::move(a));
  }
  std::sort(out.solutions.begin(), out.solutions.end());
  out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
  return out;
}

Assignment translate(const Assignment& a, const passes::NameMap& map, const ConstEnv& env) {
  Assignment out;
  for (const auto& [key, value] : a) {
    const passes::NameMapEntry* e = map.find(key.path);
    if (!e) {
      out.emplace_back(key, value);
      continue;
    }
    CellKey k{e->newPath, {}};
    std::size_t keep = std::min(e->keep, key.indices.size());
    k.indices.assign(key.indices.begin(), key.indices.begin() + static_cast<std::ptrdiff_t>(keep));
    std::vector<std::int64_t> rest(key.indices.begin() + static_cast<std::ptrdiff_t>(keep), key.indices.end());
    if (e->linearize && !rest.empty()) {
      std::vector<std::int64_t> dims;
      for (const auto& d : e->dims) {
        auto v = eval_int(d, env);
        if (!v) throw unsupported("dimension '" + to_source(d) + "' of '" + e->newPath + "' is not constant");
        dims.push_back(*v);
      }
      k.indices.push_back(linearize(rest, dims));
    } else {
      k.indices.insert(k.indices.end(), rest.begin(), rest.end());
    }
    out.emplace_back(std::move(k), value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Equivalence equivalent(const PivotModel& a, const PivotModel& b, const passes::NameMap& map, const Instance& inst) {
  return equivalent(a, b, std::vector<passes::NameMap>{map}, inst);
}

Equivalence equivalent(const PivotModel& a, const PivotModel& b, const std::vector<passes::NameMap>& maps,
                       const Instance& inst) {
  auto lhs = translated(solutions(a, inst), maps, dims_env(a, b, inst.constants));
  auto rhs = solutions(b, inst).solutions;
  Equivalence eq;
  eq.equal = lhs == rhs;
  if (eq.equal) return eq;
  std::vector<Assignment> diff;
  std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(diff));
  if (!diff.empty()) {
    eq.witness = diff.front();
    eq.witnessInA = true;
    return eq;
  }
  std::set_difference(rhs.begin(), rhs.end(), lhs.begin(), lhs.end(), std::back_inserter(diff));
  if (!diff.empty()) eq.witness = diff.front();
  return eq;
}

}  // namespace cpforge::oracle
