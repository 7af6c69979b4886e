#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cpforge/inject.hpp"
#include "cpforge/pivot.hpp"

namespace reftest {

inline std::filesystem::path corpus_dir() { return CPFORGE_CORPUS_DIR; }

inline std::filesystem::path corpus_file(const std::string& rel) { return corpus_dir() / rel; }

// Loads `<name>.scm` + `<name>.scd` from the corpus.
inline cpforge::pivot::PivotModel load_corpus(const std::string& name) {
  return cpforge::frontend::load_files(corpus_file(name + ".scm"), corpus_file(name + ".scd"));
}

// Models accepted without errors by the checker.
inline const std::vector<std::string>& clean_corpus() {
  static const std::vector<std::string> names = {"golfers", "queens", "engine", "send", "latin", "slots", "colours"};
  return names;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace reftest
