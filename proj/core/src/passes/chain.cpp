#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "cpforge/passes.hpp"

namespace cpforge::passes {

using namespace pivot;

namespace {

struct Spelling {
  PassId id;
  const char* token;
};

constexpr Spelling kSpellings[] = {
    {PassId::FlattenClasses, "flatten-classes"},   {PassId::FlattenRecords, "flatten-records"},
    {PassId::RemoveEnums, "remove-enums"},         {PassId::RemoveIf, "remove-if"},
    {PassId::UnrollLoops, "unroll-loops"},         {PassId::SimplifyConstants, "simplify"},
    {PassId::FlattenMatrices, "flatten-matrices"},
};

}  // namespace

const char* token(PassId id) {
  for (const auto& s : kSpellings)
    if (s.id == id) return s.token;
  return "?";
}

std::optional<PassId> pass_from_token(std::string_view t) {
  for (const auto& s : kSpellings)
    if (t == s.token) return s.id;
  return std::nullopt;
}

const std::vector<PassId>& all_passes() {
  static const std::vector<PassId> ids = [] {
    std::vector<PassId> v;
    for (const auto& s : kSpellings) v.push_back(s.id);
    return v;
  }();
  return ids;
}

std::vector<PassId> parse_chain(std::string_view list) {
  std::vector<PassId> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view t = list.substr(start, end - start);
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    if (!t.empty()) {
      auto id = pass_from_token(t);
      if (!id) throw std::invalid_argument("unknown pass '" + std::string(t) + "'");
      out.push_back(*id);
    }
    start = end + 1;
  }
  return out;
}

std::string chain_text(const std::vector<PassId>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) out += (i ? "," : "") + std::string(token(chain[i]));
  return out;
}

const NameMapEntry* NameMap::find(const std::string& oldPath) const {
  for (const auto& e : entries)
    if (e.oldPath == oldPath) return &e;
  return nullptr;
}

PassResult run_pass(PassId id, const PivotModel& p, const Options& opts) {
  switch (id) {
    case PassId::FlattenClasses: return flatten_classes(p);
    case PassId::FlattenRecords: return flatten_records(p, opts);
    case PassId::RemoveEnums: return remove_enums(p);
    case PassId::RemoveIf: return remove_if(p);
    case PassId::UnrollLoops: return unroll_loops(p);
    case PassId::SimplifyConstants: return simplify_constants(p);
    case PassId::FlattenMatrices: return flatten_matrices(p);
  }
  throw PassError(PassError::Kind::InternalInvariant, "unknown pass");
}

void check_chain(const PivotModel& p, const std::vector<PassId>& chain) {
  auto pos = [&](PassId id) -> std::optional<std::size_t> {
    auto it = std::find(chain.begin(), chain.end(), id);
    if (it == chain.end()) return std::nullopt;
    return static_cast<std::size_t>(it - chain.begin());
  };
  bool hasClasses = std::any_of(p.elements.begin(), p.elements.end(),
                                [](const ModelElement& e) { return e.as<ClassType>() != nullptr; });
  auto records = pos(PassId::FlattenRecords);
  auto classes = pos(PassId::FlattenClasses);
  if (records && hasClasses && (!classes || *classes > *records)) {
    throw PassError(PassError::Kind::ChainOrder, "flatten-records must come after flatten-classes");
  }
  auto ifs = pos(PassId::RemoveIf);
  auto unroll = pos(PassId::UnrollLoops);
  if (ifs && unroll && *ifs > *unroll) {
    throw PassError(PassError::Kind::ChainOrder, "remove-if must come before unroll-loops");
  }
}

ChainResult run_chain(const PivotModel& p, const std::vector<PassId>& chain, const Options& opts) {
  check_chain(p, chain);
  ChainResult out;
  out.model = p;
  for (PassId id : chain) {
    auto start = std::chrono::steady_clock::now();
    PassResult r = run_pass(id, out.model, opts);
    auto stop = std::chrono::steady_clock::now();
    out.timings.push_back({id, std::chrono::duration<double>(stop - start).count()});
    out.model = std::move(r.model);
    out.maps.push_back(std::move(r.names));
    for (auto& w : r.warnings) out.warnings.push_back(std::move(w));
  }
  return out;
}

}  // namespace cpforge::passes
