#include "cpforge/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace cpforge {

std::string SourceLocation::str() const {
  if (file.empty() && line == 0) return "<unknown>";
  std::ostringstream os;
  os << (file.empty() ? "<input>" : file) << ':' << line << ':' << column;
  return os.str();
}

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Critic: return "critic";
  }
  return "error";
}

std::string Problem::str() const {
  return std::string(to_string(severity)) + " " + location + " " + description;
}

bool has_errors(const std::vector<Problem>& problems) {
  return std::any_of(problems.begin(), problems.end(),
                     [](const Problem& p) { return p.severity != Severity::Warning; });
}

namespace {

std::string syntax_message(const SourceLocation& where, const std::string& found,
                           const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << where.str() << ": syntax error at " << found;
  if (!expected.empty()) {
    os << ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
  }
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(SourceLocation where, std::string found, std::vector<std::string> expected)
    : Error(syntax_message(where, found, expected)),
      where_(std::move(where)),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

std::string SyntaxError::message() const {
  std::string full = what();
  std::string prefix = where_.str() + ": ";
  return full.rfind(prefix, 0) == 0 ? full.substr(prefix.size()) : full;
}

InjectError::InjectError(Kind kind, std::string name, SourceLocation where,
                         const std::string& message)
    : Error(where.str() + ": " + message),
      kind_(kind),
      name_(std::move(name)),
      message_(message),
      where_(std::move(where)) {}

PassError::PassError(Kind kind, const std::string& message, std::optional<SourceLocation> where)
    : Error(where ? where->str() + ": " + message : message),
      kind_(kind),
      message_(message),
      where_(std::move(where)) {}

Problem PassError::to_problem() const {
  Problem p;
  p.severity = kind_ == Kind::InternalInvariant ? Severity::Critic : Severity::Error;
  p.location = where_ ? where_->str() : SourceLocation{}.str();
  p.description = message_;
  return p;
}

}  // namespace cpforge
