#include "cpforge/lexer.hpp"

#include <array>
#include <cctype>

namespace cpforge::frontend {

namespace {

constexpr std::array<std::string_view, 26> kKeywords = {
    "enum",   "int",      "real",   "bool",      "set",    "main",    "abstract",
    "class",  "extends",  "in",     "constraint", "forall", "if",      "else",
    "and",    "or",       "not",    "implies",   "intersect", "card", "true",
    "false",  "record",   "let",    "model",     "predicate",
};

// Longest first so that `:=` wins over `:`.
constexpr std::array<std::string_view, 21> kSymbols = {
    ":=", "..", "<=", ">=", "!=", "{", "}", "(", ")", "[", "]",
    ",",  ";",  ".",  "+",  "-",  "*", "/", "=", "<", ">",
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::string Token::describe() const {
  switch (kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + text + "'";
    default: return "'" + text + "'";
  }
}

std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    Token t;
    t.loc = {file, line, col};
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.text = std::string(text.substr(start, j - start));
      t.kind = is_keyword(t.text) ? Tok::Keyword : Tok::Ident;
      advance(j - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Int;
      // `1..n` is a range, not the real `1.`.
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        t.kind = Tok::Real;
      }
      t.text = std::string(text.substr(start, j - start));
      advance(j - start);
    } else {
      bool matched = false;
      for (auto s : kSymbols) {
        if (text.substr(i, s.size()) == s) {
          t.kind = Tok::Symbol;
          t.text = std::string(s);
          advance(s.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw SyntaxError(t.loc, std::string("'") + c + "'", {});
    }
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", {file, line, col}});
  return out;
}

}  // namespace cpforge::frontend
