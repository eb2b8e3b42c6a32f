#pragma once

// Hand-rolled random generators for property tests. Every generator is
// driven by an explicit seed so failures replay.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "binomid/identity.hpp"
#include "binomid/laurent_series.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(int percent = 50) { return int_in(0, 99) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(int_in(0, static_cast<long long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

inline binomid::LinExpr linexpr(Gen& g, const std::vector<std::string>& vars, int max_terms = 3,
                                long long max_coeff = 2, long long max_const = 4) {
  binomid::LinExpr e(g.int_in(-max_const, max_const));
  const long long n = g.int_in(0, max_terms);
  for (long long i = 0; i < n && !vars.empty(); ++i) {
    long long c = g.int_in(-max_coeff, max_coeff);
    if (c != 0) e += binomid::LinExpr::var(g.pick(vars), c);
  }
  return e;
}

inline binomid::Term term(Gen& g, const std::vector<std::string>& vars, int max_factors = 4, bool allow_sign = true) {
  binomid::Term t;
  if (allow_sign && g.coin(30)) t.sign_exponent = linexpr(g, vars);
  const long long n = g.int_in(1, max_factors);
  for (long long i = 0; i < n; ++i) t.factors.push_back({linexpr(g, vars), linexpr(g, vars)});
  return t;
}

inline std::vector<std::string> param_set(Gen& g) {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "m", "n", "p", "q", "x", "y"};
  std::vector<std::string> out;
  for (const auto& p : pool)
    if (g.coin(40)) out.push_back(p);
  if (out.empty()) out.push_back(g.pick(pool));
  return out;
}

/// A well-formed identity: sum or plain term on the left, product on the
/// right, every variable declared.
inline binomid::Identity identity(Gen& g, const std::string& name = "rand") {
  binomid::Identity I;
  I.name = name;
  I.params = param_set(g);
  const long long nc = g.int_in(0, 2);
  for (long long i = 0; i < nc; ++i) I.constraints.push_back(linexpr(g, I.params));
  if (g.coin(70)) {
    binomid::SumExpr s;
    s.bound_var = g.coin() ? "k" : "j";
    s.lower = linexpr(g, I.params, 1);
    s.upper = linexpr(g, I.params, 2);
    auto with_bound = I.params;
    with_bound.push_back(s.bound_var);
    s.body = term(g, with_bound);
    I.lhs = s;
  } else {
    I.lhs = term(g, I.params);
  }
  I.rhs = term(g, I.params);
  return I;
}

inline binomid::ParamEnv env(Gen& g, const std::vector<std::string>& names, long long lo, long long hi) {
  binomid::ParamEnv e;
  for (const auto& n : names) e[n] = g.int_in(lo, hi);
  return e;
}

inline binomid::Rational rational(Gen& g, long long num = 5, long long den = 3) {
  return binomid::Rational(g.int_in(-num, num), g.int_in(1, den));
}

/// Random polynomial in the context's variables: a few monomials with user
/// exponents in [emin, emax] per variable.
inline binomid::LaurentSeries polynomial(Gen& g, const binomid::ContextPtr& ctx, int terms, long long emin,
                                         long long emax) {
  auto s = binomid::LaurentSeries::zero(ctx);
  for (int i = 0; i < terms; ++i) {
    std::map<std::string, std::int64_t> e;
    for (const auto& v : ctx->vars) e[v.name] = g.int_in(emin, emax);
    s = s + binomid::LaurentSeries::monomial(ctx, e, rational(g));
  }
  return s;
}

inline binomid::LaurentSeries positive_valuation_poly(Gen& g, const binomid::ContextPtr& ctx) {
  const auto& v = ctx->vars[static_cast<std::size_t>(g.int_in(0, static_cast<long long>(ctx->vars.size()) - 1))];
  const std::int64_t d = v.orientation == binomid::Orientation::Large ? -1 : 1;
  return binomid::LaurentSeries::monomial(ctx, {{v.name, d}}, rational(g));
}

inline binomid::Rational int_nonzero(Gen& g) {
  long long v = g.int_in(1, 4);
  return binomid::Rational(g.coin() ? v : -v);
}

/// A series with no constant term and nonnegative valuation in every
/// variable (in the variable's own expansion direction).
inline binomid::LaurentSeries positive_valuation(Gen& g, const binomid::ContextPtr& ctx) {
  auto s = binomid::LaurentSeries::zero(ctx);
  const long long n = g.int_in(1, 3);
  for (long long i = 0; i < n; ++i) {
    std::map<std::string, std::int64_t> e;
    bool nonzero = false;
    for (const auto& v : ctx->vars) {
      const long long d = g.int_in(0, 2);
      nonzero = nonzero || d != 0;
      e[v.name] = v.orientation == binomid::Orientation::Large ? -d : d;
    }
    if (!nonzero) e[ctx->vars[0].name] = ctx->vars[0].orientation == binomid::Orientation::Large ? -1 : 1;
    s = s + binomid::LaurentSeries::monomial(ctx, e, int_nonzero(g));
  }
  if (g.coin()) {
    // Divide by a unit so the ratio itself is truncated.
    auto u = binomid::LaurentSeries::constant(ctx, 1) + positive_valuation_poly(g, ctx);
    s = s * u.inverse();
  }
  return s;
}

/// A truncated (non-polynomial) series: polynomial / (1 + polynomial of
/// positive valuation), so windows come from the caps.
inline binomid::LaurentSeries truncated_series(Gen& g, const binomid::ContextPtr& ctx) {
  auto num = polynomial(g, ctx, 3, 0, 2);
  auto den = binomid::LaurentSeries::constant(ctx, 1);
  for (const auto& v : ctx->vars) {
    auto x = binomid::LaurentSeries::variable(ctx, v.name);
    if (v.orientation == binomid::Orientation::Large) x = x.inverse();
    den = den + x.scaled(rational(g));
  }
  return num * den.inverse();
}

}  // namespace gen
