#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpforge {

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  // "file:line:col"; "<unknown>" for a default-constructed location.
  std::string str() const;
};

enum class Severity { Error, Warning, Critic };

const char* to_string(Severity s);

// Diagnostic record produced by the checker and by passes.
struct Problem {
  Severity severity = Severity::Error;
  std::string location;
  std::string description;

  // `SEVERITY file:line:col description`
  std::string str() const;
  friend bool operator==(const Problem&, const Problem&) = default;
};

bool has_errors(const std::vector<Problem>& problems);

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceLocation where, std::string found, std::vector<std::string> expected);

  const SourceLocation& where() const { return where_; }
  // what() without the leading location.
  std::string message() const;
  const std::string& found() const { return found_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceLocation where_;
  std::string found_;
  std::vector<std::string> expected_;
};

// Raised by injection when refersTo-style lookup fails or a scope has clashing names.
class InjectError : public Error {
 public:
  enum class Kind { UnresolvedName, DuplicateName, MainClass };

  InjectError(Kind kind, std::string name, SourceLocation where, const std::string& message);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const SourceLocation& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  std::string name_;
  std::string message_;
  SourceLocation where_;
};

class PassError : public Error {
 public:
  enum class Kind {
    ChainOrder,
    Unsupported,
    NonConstantBound,
    DivisionByZero,
    InternalInvariant,
    UnsupportedConstruct,
  };

  PassError(Kind kind, const std::string& message, std::optional<SourceLocation> where = {});

  Kind kind() const { return kind_; }
  const std::optional<SourceLocation>& where() const { return where_; }
  const std::string& message() const { return message_; }

  // Internal invariant violations surface as `critic` problems, the rest as errors.
  Problem to_problem() const;

 private:
  Kind kind_;
  std::string message_;
  std::optional<SourceLocation> where_;
};

class OracleError : public Error {
 public:
  enum class Kind { SearchSpaceExceeded, UnboundedDomain, Unsupported };

  OracleError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace cpforge
