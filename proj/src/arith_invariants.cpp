#include "binomid/arith_invariants.hpp"

#include <functional>

#include "binomid/exact_arith.hpp"

namespace binomid {

namespace {

// Runs `holds` on every (n, k) in the box that `applies` accepts.
InvariantCheck run_check(std::string name, int bound, const std::function<bool(int, int)>& applies,
                         const std::function<bool(int, int)>& holds) {
  InvariantCheck c;
  c.name = std::move(name);
  for (int n = -bound; n <= bound; ++n)
    for (int k = -bound; k <= bound; ++k) {
      if (!applies(n, k)) continue;
      ++c.checked;
      if (holds(n, k)) continue;
      if (c.failed++ == 0) c.first_failure = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    }
  return c;
}

}  // namespace

std::vector<InvariantCheck> check_arith_invariants(int bound) {
  auto always = [](int, int) { return true; };
  std::vector<InvariantCheck> out;
  out.push_back(run_check("pascal", bound, always, [](int n, int k) {
    return binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k);
  }));
  out.push_back(run_check("upper-negation", bound, always, [](int n, int k) {
    return binomial(n, k) == sign_power(k) * binomial(k - n - 1, k);
  }));
  out.push_back(run_check("second-symmetry", bound, [](int n, int k) { return 0 <= k && k <= n; },
                          [](int n, int k) { return binomial(n, k) == sign_power(n - k) * binomial(-k - 1, n - k); }));
  out.push_back(run_check("symmetry", bound, [](int n, int k) { return 0 <= k && k <= n; },
                          [](int n, int k) { return binomial(n, k) == binomial(n, n - k); }));
  out.push_back(run_check("boundary", bound, always, [](int n, int k) {
    if (k == 0 && binomial(n, 0) != 1) return false;
    if (0 <= n && n < k && binomial(n, k) != 0) return false;
    if (k < 0 && binomial(n, k) != 0) return false;
    return true;
  }));
  return out;
}

}  // namespace binomid
