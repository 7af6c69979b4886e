#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cpforge/oracle.hpp"
#include "cpforge/passes.hpp"

namespace reftest {

// Hand-written equivalence case: `pass` is checked on the model obtained by
// running `before` over the parsed source.
struct Case {
  std::string name;
  cpforge::passes::PassId pass;
  std::string model;
  std::string data;
  std::vector<cpforge::passes::PassId> before;
};

const std::vector<Case>& hand_written();
std::vector<Case> hand_written_for(cpforge::passes::PassId pass);

struct Outcome {
  cpforge::oracle::Equivalence eq;
  std::size_t solutions = 0;  // of the pass input
  std::string dump;           // input and output models, witness if any
};

// Throws std::runtime_error when the checker rejects the source.
Outcome run_case(const std::string& model, const std::string& data,
                 const std::vector<cpforge::passes::PassId>& before, cpforge::passes::PassId pass);

// Seeded models for `pass`: classes are flattened first when the pass needs it.
Outcome run_generated(cpforge::passes::PassId pass, unsigned seed);

// Checker fixture under corpus/defects with the location one error must carry.
struct Defect {
  std::string fixture;
  std::string location;  // file:line:col, file name only
  std::string text;      // fragment of the description
};

const std::vector<Defect>& defects();

inline void PrintTo(const Defect& d, std::ostream* os) { *os << d.location; }

}  // namespace reftest
