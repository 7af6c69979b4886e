#include <map>
#include <set>

#include "cpforge/passes.hpp"
#include "cpforge/pivot_ops.hpp"

namespace cpforge::passes {

using namespace pivot;

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

const Feature* find_feature(const std::vector<Feature>& fs, const std::string& name) {
  for (const auto& f : fs)
    if (f.name() == name) return &f;
  return nullptr;
}

// One enclosing record while flattening its contents.
struct Level {
  const Record* record;
  std::string index;  // forall index standing for the current element (arrays only)
};

class RecordFlattener {
 public:
  RecordFlattener(const PivotModel& p, const Options& opts, PassResult& out) : p_(p), opts_(opts), out_(out) {
    for (const auto& e : p.elements) {
      if (const auto* f = e.as<Feature>()) {
        if (f->as<Record>()) top_.push_back(*f);
      }
    }
    taken_ = all_declared_names(p);
    std::set<std::string> recordNames;
    collect_record_names(top_, recordNames);
    for (const auto& n : recordNames) taken_.erase(n);
    std::vector<Level> chain;
    prepare(top_, chain, 0);
  }

  void run() {
    for (const auto& e : p_.elements) {
      const auto* f = e.as<Feature>();
      if (!f) {
        if (const auto* pr = e.as<Predicate>()) {
          Predicate q = *pr;
          q.statements = body({}, pr->statements, {});
          out_.model.elements.push_back(ModelElement{std::move(q)});
        } else {
          out_.model.elements.push_back(e);
        }
        continue;
      }
      if (f->as<Record>()) {
        // Records are keyed by their address in top_.
        const auto* r = find_feature(top_, f->name())->as<Record>();
        std::vector<Level> chain;
        std::vector<Statement> stmts = flatten(*r, chain, {});
        if (!stmts.empty()) {
          ConstraintZone z{r->name, std::move(stmts), r->loc};
          out_.model.elements.push_back(element(Feature{std::move(z)}));
        }
        continue;
      }
      out_.model.elements.push_back(element(plain_feature(*f, {})));
    }
  }

 private:
  static void collect_record_names(const std::vector<Feature>& fs, std::set<std::string>& out) {
    for (const auto& f : fs)
      if (const auto* r = f.as<Record>()) {
        out.insert(r->name);
        collect_record_names(r->elements, out);
      }
  }

  // Chooses forall index names, rewrites array sizes and enforces the depth limit.
  void prepare(const std::vector<Feature>& fs, std::vector<Level>& chain, std::size_t depth) {
    for (const auto& f : fs) {
      const auto* r = f.as<Record>();
      if (!r) continue;
      std::size_t d = depth + (r->array ? 1 : 0);
      if (d > opts_.maxRecordDepth) {
        throw PassError(PassError::Kind::Unsupported,
                        "record array '" + r->name + "' nested deeper than " + std::to_string(opts_.maxRecordDepth),
                        r->loc.value);
      }
      if (r->array) {
        if (r->array->is_matrix()) {
          throw PassError(PassError::Kind::Unsupported, "two-dimensional record array '" + r->name + "'",
                          r->loc.value);
        }
        dims_.emplace(r, expr(r->array->n, chain, {}));
        std::string idx = r->name;
        if (taken_.count(idx)) {
          idx = fresh_name(r->name + "_", taken_);
          out_.warnings.push_back(Problem{Severity::Warning,
                                          r->loc.value ? r->loc.value->str() : SourceLocation{}.str(),
                                          "loop index for record '" + r->name + "' renamed to '" + idx + "'"});
        }
        taken_.insert(idx);
        index_.emplace(r, idx);
      }
      chain.push_back(Level{r, r->array ? index_.at(r) : std::string()});
      prepare(r->elements, chain, d);
      chain.pop_back();
    }
  }

  // ---- expressions

  Expr expr(const Expr& e, const std::vector<Level>& chain, const std::set<std::string>& bound) {
    return std::visit(
        overloaded{
            [&](const VarRef& ref) { return path(e, ref, chain, bound); },
            [&](const Unary& u) { return unary(u.op, expr(*u.arg, chain, bound), e.loc); },
            [&](const Binary& b) {
              return binary(b.op, expr(*b.lhs, chain, bound), expr(*b.rhs, chain, bound), e.loc);
            },
            [&](const Card& c) { return card(expr(*c.arg, chain, bound), e.loc); },
            [&](const auto&) { return e; },
        },
        e.node);
  }

  Expr path(const Expr& e, const VarRef& ref, const std::vector<Level>& chain, const std::set<std::string>& bound) {
    VarRef r = ref;
    for (auto& step : r.path)
      for (auto& idx : step.indices) idx = expr(idx, chain, bound);
    const std::string& head = r.path.front().name;
    if (bound.count(head)) return Expr{std::move(r), e.loc};

    // Innermost record declaring the head, else a top-level record.
    std::size_t levels = 0;
    const std::vector<Feature>* container = nullptr;
    for (std::size_t j = chain.size(); j-- > 0;) {
      if (find_feature(chain[j].record->elements, head)) {
        levels = j + 1;
        container = &chain[j].record->elements;
        break;
      }
    }
    if (!container) {
      if (!find_feature(top_, head)) return Expr{std::move(r), e.loc};
      container = &top_;
    }

    std::vector<std::string> names;
    std::vector<Expr> indices, dims;
    for (std::size_t j = 0; j < levels; ++j) {
      names.push_back(chain[j].record->name);
      if (chain[j].record->array) {
        indices.push_back(var_ref(chain[j].index));
        dims.push_back(dims_.at(chain[j].record));
      }
    }
    std::size_t recordArrays = indices.size();

    for (std::size_t s = 0; s < r.path.size(); ++s) {
      auto& step = r.path[s];
      const Feature* f = find_feature(*container, step.name);
      if (!f) {
        throw PassError(PassError::Kind::InternalInvariant, "record has no member '" + step.name + "'", e.loc.value);
      }
      names.push_back(step.name);
      bool last = s + 1 == r.path.size();
      if (const auto* rec = f->as<Record>()) {
        if (last) {
          throw PassError(PassError::Kind::Unsupported, "record '" + step.name + "' used as a value", e.loc.value);
        }
        if (rec->array) {
          if (step.indices.size() != 1)
            throw PassError(PassError::Kind::Unsupported, "record array '" + step.name + "' needs one index",
                            e.loc.value);
          indices.push_back(std::move(step.indices[0]));
          dims.push_back(dims_.at(rec));
          ++recordArrays;
        }
        container = &rec->elements;
        continue;
      }
      if (!last) {
        throw PassError(PassError::Kind::InternalInvariant, "'" + step.name + "' has no members", e.loc.value);
      }
      std::string flat = join(names, "_");
      if (recordArrays == 0) return var_ref(flat, std::move(step.indices), e.loc);
      if (const auto* v = f->as<Variable>(); v && v->array) {
        dims.push_back(v->array->n);
        if (v->array->m) dims.push_back(*v->array->m);
      }
      for (auto& i : step.indices) indices.push_back(std::move(i));
      return var_ref(flat, {linearize(indices, dims)}, e.loc);
    }
    return Expr{std::move(r), e.loc};
  }

  // ---- statements

  std::vector<Statement> body(const std::vector<Level>& chain, const std::vector<Statement>& stmts,
                              std::set<std::string> bound) {
    std::vector<Statement> out;
    for (const auto& s : stmts) {
      out.push_back(statement(chain, s, bound));
      if (const auto* l = s.as<Let>()) bound.insert(l->name);
    }
    return out;
  }

  Statement statement(const std::vector<Level>& chain, const Statement& s, const std::set<std::string>& bound) {
    return std::visit(overloaded{
                          [&](const Constraint& c) { return Statement{Constraint{expr(c.expr, chain, bound)}, s.loc}; },
                          [&](const Forall& f) {
                            std::set<std::string> inner = bound;
                            inner.insert(f.index);
                            Forall g{f.index, expr(f.lower, chain, bound), expr(f.upper, chain, bound),
                                     body(chain, f.body, inner)};
                            return Statement{std::move(g), s.loc};
                          },
                          [&](const IfStmt& i) {
                            IfStmt j{expr(i.cond, chain, bound), body(chain, i.thenBody, bound), std::nullopt};
                            if (i.elseBody) j.elseBody = body(chain, *i.elseBody, bound);
                            return Statement{std::move(j), s.loc};
                          },
                          [&](const Let& l) { return Statement{Let{l.name, expr(l.value, chain, bound)}, s.loc}; },
                      },
                      s.node);
  }

  // ---- features

  std::optional<ArrayDims> dims(const std::optional<ArrayDims>& a, const std::vector<Level>& chain) {
    if (!a) return std::nullopt;
    ArrayDims d{expr(a->n, chain, {}), std::nullopt};
    if (a->m) d.m = expr(*a->m, chain, {});
    return d;
  }

  std::optional<Domain> domain(const std::optional<Domain>& d, const std::vector<Level>& chain) {
    if (!d) return std::nullopt;
    if (const auto* i = std::get_if<Interval>(&d->node))
      return interval(expr(i->lower, chain, {}), expr(i->upper, chain, {}));
    ExplicitSet s;
    for (const auto& v : std::get<ExplicitSet>(d->node).values) s.values.push_back(expr(v, chain, {}));
    return Domain{std::move(s)};
  }

  Feature plain_feature(const Feature& f, const std::vector<Level>& chain) {
    return std::visit(overloaded{
                          [&](const Variable& v) {
                            Variable w = v;
                            w.array = dims(v.array, chain);
                            w.domain = domain(v.domain, chain);
                            return Feature{std::move(w)};
                          },
                          [&](const Constant& k) {
                            Constant c = k;
                            c.value = expr(k.value, chain, {});
                            return Feature{std::move(c)};
                          },
                          [&](const ConstraintZone& z) {
                            ConstraintZone y{z.name, body(chain, z.statements, {}), z.loc};
                            return Feature{std::move(y)};
                          },
                          [&](const Record& r) { return Feature{r}; },
                      },
                      f.node);
  }

  // Hoists the leaves of `r` into the output model and returns its statements,
  // wrapped in a forall when `r` is an array.
  std::vector<Statement> flatten(const Record& r, std::vector<Level>& chain, std::vector<std::string> names) {
    chain.push_back(Level{&r, r.array ? index_.at(&r) : std::string()});
    names.push_back(r.name);
    std::vector<Statement> stmts;
    for (const auto& f : r.elements) {
      if (const auto* sub = f.as<Record>()) {
        auto inner = flatten(*sub, chain, names);
        for (auto& s : inner) stmts.push_back(std::move(s));
        continue;
      }
      if (const auto* z = f.as<ConstraintZone>()) {
        for (auto& s : body(chain, z->statements, {})) stmts.push_back(std::move(s));
        continue;
      }
      hoist(f, chain, names);
    }
    chain.pop_back();
    if (!r.array || stmts.empty()) return stmts;
    Forall loop{index_.at(&r), int_lit(1), dims_.at(&r), std::move(stmts)};
    std::vector<Statement> wrapped;
    wrapped.push_back(Statement{std::move(loop), r.loc});
    return wrapped;
  }

  void hoist(const Feature& f, const std::vector<Level>& chain, const std::vector<std::string>& names) {
    std::vector<std::string> full = names;
    full.push_back(f.name());
    std::string flat = join(full, "_");
    if (const auto* k = f.as<Constant>()) {
      Constant c = *k;
      c.name = flat;
      c.value = expr(k->value, chain, {});
      out_.model.elements.push_back(element(Feature{std::move(c)}));
      return;
    }
    const auto& v = std::get<Variable>(f.node);
    Variable w = v;
    w.name = flat;
    w.domain = domain(v.domain, chain);
    std::vector<Expr> sizes;
    for (const auto& level : chain)
      if (level.record->array) sizes.push_back(dims_.at(level.record));

    NameMapEntry entry{join(full, "."), flat, 0, false, {}};
    if (sizes.empty()) {
      w.array = dims(v.array, chain);
    } else {
      auto leaf = dims(v.array, chain);
      if (leaf) {
        sizes.push_back(leaf->n);
        if (leaf->m) sizes.push_back(*leaf->m);
      }
      w.array = ArrayDims{product(sizes), std::nullopt};
      entry.linearize = true;
      entry.dims = sizes;
    }
    out_.names.entries.push_back(std::move(entry));
    out_.model.elements.push_back(element(Feature{std::move(w)}));
  }

  const PivotModel& p_;
  const Options& opts_;
  PassResult& out_;
  std::vector<Feature> top_;
  std::set<std::string> taken_;
  std::map<const Record*, Expr> dims_;
  std::map<const Record*, std::string> index_;
};

}  // namespace

PassResult flatten_records(const PivotModel& p, const Options& opts) {
  for (const auto& e : p.elements) {
    if (e.as<ClassType>()) {
      throw PassError(PassError::Kind::ChainOrder,
                      "flatten-records needs a model without classes; run flatten-classes first");
    }
  }
  PassResult out;
  out.model.name = p.name;
  RecordFlattener(p, opts, out).run();
  return out;
}

}  // namespace cpforge::passes
