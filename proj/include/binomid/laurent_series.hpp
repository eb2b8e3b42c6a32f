#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "binomid/error.hpp"
#include "binomid/exact_arith.hpp"

namespace binomid {

using Rational = boost::multiprecision::cpp_rational;

/// Direction in which a variable is expanded. A small variable is expanded
/// in ascending powers around 0, a large one in descending powers around
/// infinity (internally a series in 1/x).
enum class Orientation { Small, Large };

struct VarSpec {
  std::string name;
  Orientation orientation = Orientation::Small;
};

/// Exponent bound meaning "unbounded".
inline constexpr std::int64_t kUnbounded = std::int64_t{1} << 60;

/// Variables shared by every series of one computation, plus the per-variable
/// truncation caps used wherever an infinite expansion has to be cut off.
/// Caps are in internal exponents (x^e for small, (1/x)^e for large).
struct SeriesContext {
  std::vector<VarSpec> vars;
  std::vector<std::int64_t> caps;

  std::size_t index_of(const std::string& name) const;
  bool has(const std::string& name) const;
  /// Internal exponent of the user-facing power x^e.
  std::int64_t to_internal(std::size_t var, std::int64_t user_exp) const;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

ContextPtr make_context(std::vector<VarSpec> vars, std::int64_t cap);

using Exponents = std::vector<std::int64_t>;

/// Truncated multivariate Laurent series with exact rational coefficients.
///
/// Per variable v the series carries a window [lo_v, hi_v] in internal
/// exponents: every true coefficient with some e_v < lo_v is zero, and every
/// stored coefficient whose exponents all satisfy e_v <= hi_v is exact.
/// Nothing is stored above hi. hi = kUnbounded means the expansion in that
/// variable is complete; lo = kUnbounded marks the exact zero series.
class LaurentSeries {
 public:
  explicit LaurentSeries(ContextPtr ctx);

  static LaurentSeries zero(ContextPtr ctx);
  static LaurentSeries constant(ContextPtr ctx, const Rational& c);
  /// The user-facing monomial c * prod x_v^{user_exps[v]}.
  static LaurentSeries monomial(ContextPtr ctx, const std::map<std::string, std::int64_t>& user_exps,
                                const Rational& c = 1);
  static LaurentSeries variable(ContextPtr ctx, const std::string& name);

  const ContextPtr& context() const { return ctx_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  std::int64_t lo(std::size_t v) const { return lo_[v]; }
  std::int64_t hi(std::size_t v) const { return hi_[v]; }

  /// Certified identically zero.
  bool is_zero() const;
  /// The value of a series that is certified constant; throws otherwise.
  Rational constant_value() const;

  /// Coefficient of the user-facing monomial. Exponents below the certified
  /// support are exactly zero; anything above the window throws WindowError.
  Rational coeff(const std::map<std::string, std::int64_t>& user_exps) const;
  Rational coeff_internal(const Exponents& e) const;

  /// User-facing exponent interval of variable `name`.
  std::pair<std::int64_t, std::int64_t> user_window(const std::string& name) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(const Rational& c) const;

  /// Multiplicative inverse; needs a nonzero coefficient at the lowest
  /// exponent vector. Results are cut at the context caps.
  LaurentSeries inverse() const;
  LaurentSeries pow(const BigInt& e) const;

  /// Coefficient series of name^{-1}; constant in `name`.
  LaurentSeries res(const std::string& name) const;

  /// Lowers the window of variable v to at most `hi`.
  LaurentSeries truncated(std::size_t v, std::int64_t hi) const;

  /// Human-readable window and coefficient table.
  std::string to_string() const;

 private:
  void check_same_context(const LaurentSeries& other) const;
  void normalize();

  ContextPtr ctx_;
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> hi_;
  std::map<Exponents, Rational> terms_;
};

/// sum_{k>=0} ratio^k. Needs lo >= 0 in every variable and a zero constant
/// term; otherwise throws EvalError("divergent formal sum").
LaurentSeries geometric_collapse(const LaurentSeries& ratio);

/// g(s) * s^p, the residue in the large variable x of g(x) x^p / (x - s).
/// g must be polynomial in x and s free of x.
LaurentSeries residue_eval_simple_pole(const LaurentSeries& g, const std::string& x, std::int64_t p,
                                       const LaurentSeries& s);

std::string to_string(const Rational& q);

}  // namespace binomid
