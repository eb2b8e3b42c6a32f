#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace binomid {

struct InvariantCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  /// First counterexample, empty when none.
  std::string first_failure;
};

/// Pascal, upper negation, second symmetry, symmetry and the boundary
/// values of the binomial coefficient, exhaustively for |n|,|k| <= bound.
std::vector<InvariantCheck> check_arith_invariants(int bound = 30);

}  // namespace binomid
