#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cpforge/diagnostics.hpp"

namespace cpforge::frontend {

enum class Tok {
  Ident,
  Int,
  Real,
  Keyword,
  Symbol,  // punctuation and operators: `:=`, `..`, `<=`, `{`, ...
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLocation loc;

  bool is(Tok k, std::string_view t) const { return kind == k && text == t; }
  bool keyword(std::string_view t) const { return is(Tok::Keyword, t); }
  bool symbol(std::string_view t) const { return is(Tok::Symbol, t); }
  // Text used in "found ..." diagnostics.
  std::string describe() const;
};

bool is_keyword(std::string_view word);

// Splits `text` into tokens, dropping whitespace and `//` comments. The last
// token is always End. Throws SyntaxError on a character that starts no token.
std::vector<Token> tokenize(std::string_view text, const std::string& file = "<input>");

}  // namespace cpforge::frontend
