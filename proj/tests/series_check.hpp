#pragma once

#include <cstddef>
#include <set>

#include "binomid/laurent_series.hpp"

namespace check {

struct Agreement {
  std::size_t compared = 0;
  std::size_t mismatched = 0;
  bool ok() const { return compared > 0 && mismatched == 0; }
};

inline bool exact_at(const binomid::Exponents& e, const binomid::LaurentSeries& s) {
  for (std::size_t v = 0; v < e.size(); ++v)
    if (e[v] > s.hi(v)) return false;
  return true;
}

/// Compares every stored coefficient of either series that lies inside both
/// accuracy windows.
inline Agreement agree(const binomid::LaurentSeries& a, const binomid::LaurentSeries& b) {
  std::set<binomid::Exponents> keys;
  for (const auto& [e, c] : a.terms()) keys.insert(e);
  for (const auto& [e, c] : b.terms()) keys.insert(e);
  Agreement r;
  for (const auto& e : keys) {
    if (!exact_at(e, a) || !exact_at(e, b)) continue;
    ++r.compared;
    if (a.coeff_internal(e) != b.coeff_internal(e)) ++r.mismatched;
  }
  return r;
}

}  // namespace check
