#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "binomid/dsl.hpp"
#include "binomid/identity.hpp"
#include "binomid/laurent_series.hpp"

namespace binomid {

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

/// Formal expression over series variables with parameter-dependent
/// exponents, binomial coefficients, residues and sums.
struct SExpr {
  enum class Kind { Scalar, Var, Binom, Add, Neg, Mul, Div, Pow, Res, Sum };

  Kind kind = Kind::Scalar;
  LinExpr scalar;              // Scalar
  std::string name;            // Var, Res (variable), Sum (bound variable)
  BinomFactor binom;           // Binom
  std::vector<SExprPtr> args;  // operands; Pow/Res/Sum keep their body in args[0]
  LinExpr exponent;            // Pow
  LinExpr lower;               // Sum
  std::optional<LinExpr> upper;  // Sum; absent means infinity

  static SExprPtr make_scalar(LinExpr v);
  static SExprPtr make_var(std::string name);
  static SExprPtr make_binom(BinomFactor f);
  static SExprPtr make_add(std::vector<SExprPtr> terms);
  static SExprPtr make_neg(SExprPtr a);
  static SExprPtr make_mul(std::vector<SExprPtr> factors);
  static SExprPtr make_div(SExprPtr num, SExprPtr den);
  static SExprPtr make_pow(SExprPtr base, LinExpr exponent);
  static SExprPtr make_res(std::string var, SExprPtr body);
  static SExprPtr make_sum(std::string bound, LinExpr lower, std::optional<LinExpr> upper, SExprPtr body);
};

/// Parses a series expression. Identifiers in `series_vars` are series
/// variables; every other identifier goes through `check` as a parameter.
///
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' ('(' linexpr ')' | int | name))?
///   atom  := int | name | C(linexpr, linexpr) | '(' expr ')'
///          | res(x, ...)[expr] | sum(k, linexpr, linexpr | inf)[expr]
SExprPtr parse_sexpr(TokenStream& ts, const std::set<std::string>& series_vars, const NameCheck& check = {});
SExprPtr parse_sexpr(std::string_view text, const std::set<std::string>& series_vars);

std::string print_sexpr(const SExprPtr& e);

/// True when `name` occurs free in e.
bool mentions(const SExprPtr& e, const std::string& name);

/// Replaces every free parameter occurrence using `images`.
SExprPtr substitute_params(const SExprPtr& e, const std::map<std::string, LinExpr>& images);

/// Peels leading residue operators: res(x)[res(y)[B]] -> ({x, y}, B).
std::pair<std::vector<std::string>, SExprPtr> peel_residues(const SExprPtr& e);

/// The SumExpr form of `sum(k, lo, hi)[monomial of binomials and signs]`,
/// if e has that shape.
std::optional<SumExpr> as_sum_expr(const SExprPtr& e);
std::optional<Term> as_term(const SExprPtr& e);

/// Evaluates e as a series at the parameter values in env. Infinite sums need
/// a certificate that their terms vanish (identically from some index on, or
/// beyond the context caps); without one the evaluation throws EvalError.
LaurentSeries eval_series(const SExprPtr& e, const ParamEnv& env, const ContextPtr& ctx);

/// Evaluates e and truncates each variable to its user-facing window
/// [lo, hi]. Caps are chosen to cover the window.
LaurentSeries series_expand(const SExprPtr& e, const ParamEnv& env, const std::vector<VarSpec>& vars,
                            const std::map<std::string, std::pair<std::int64_t, std::int64_t>>& window);

}  // namespace binomid
