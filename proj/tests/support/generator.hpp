#pragma once

#include <string>

#include "cpforge/passes.hpp"

namespace reftest {

// Small random source model aimed at one pass: at most four decision cells,
// integer domains at most four wide, set universes at most four.
struct GeneratedModel {
  std::string name;
  std::string model;
  std::string data;
};

GeneratedModel generate_model(cpforge::passes::PassId pass, unsigned seed);

}  // namespace reftest
