#pragma once

#include <cstddef>

// Counters written directly against the puzzle definitions, without the
// model language or the grounding oracle.
namespace reftest {

// Placements of n queens, one per column, no two attacking.
std::size_t queens_count(int n);

// Schedules of `golfers` players into `groups` labelled groups of `size` for
// `weeks` labelled weeks such that no pair shares a group twice.
std::size_t golfers_count(int golfers, int size, int weeks, int groups);

}  // namespace reftest
