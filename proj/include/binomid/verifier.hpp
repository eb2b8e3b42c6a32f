#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "binomid/identity.hpp"

namespace binomid {

/// Inclusive integer range per parameter.
struct GridSpec {
  std::map<std::string, std::pair<long long, long long>> ranges;

  /// Every parameter of I on [lo, hi].
  static GridSpec uniform(const Identity& I, long long lo, long long hi);
  /// Number of points of the Cartesian product over I's parameters.
  std::uint64_t total(const Identity& I) const;
};

using OrderedEnv = std::vector<std::pair<std::string, BigInt>>;

struct Failure {
  OrderedEnv env;
  BigInt lhs;
  BigInt rhs;
};

struct VerificationReport {
  std::string identity;
  /// Ranges in the identity's parameter order.
  std::vector<std::pair<std::string, std::pair<long long, long long>>> grid;
  std::uint64_t grid_total = 0;
  /// Environments that satisfied the constraints and were evaluated.
  std::uint64_t instances = 0;
  std::vector<Failure> failures;
  /// Fuzz only: mismatches outside the identity's constraints.
  std::vector<Failure> exploratory;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<bool> bound_sensitive;
  std::int64_t elapsed_ms = 0;

  bool passed() const { return failures.empty(); }
};

/// Evaluates I at every grid point that satisfies its constraints, using up
/// to `jobs` worker threads. Failures come out in lexicographic order of the
/// parameter values (parameters in declaration order) whatever `jobs` is.
VerificationReport verify_grid(const Identity& I, const GridSpec& grid, unsigned jobs = 1);

struct BoundSensitivity {
  BigInt stated;
  BigInt extended;
  bool equal = false;
};

/// Compares the stated sum with the sum over [lower-window, upper+window].
BoundSensitivity bound_sensitivity(const Identity& I, const ParamEnv& env, long long window);

/// True when some grid point (within constraints) changes value once the
/// summation range is widened by `window`.
bool grid_bound_sensitive(const Identity& I, const GridSpec& grid, long long window);

/// `trials` random environments with every parameter uniform on [lo, hi],
/// driven by a seeded 64-bit Mersenne Twister. Deterministic given the seed.
VerificationReport fuzz(const Identity& I, std::uint64_t seed, std::uint64_t trials, long long lo, long long hi);

nlohmann::json to_json(const VerificationReport& r, bool include_timing = true);
std::string to_text(const VerificationReport& r);

ParamEnv to_env(const OrderedEnv& env);

}  // namespace binomid
