#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "binomid/linexpr.hpp"

namespace binomid {

/// C(upper, lower).
struct BinomFactor {
  LinExpr upper;
  LinExpr lower;

  friend bool operator==(const BinomFactor&, const BinomFactor&) = default;
  friend auto operator<=>(const BinomFactor&, const BinomFactor&) = default;
};

/// (-1)^sign_exponent * prod factors. An absent sign exponent means +1.
struct Term {
  std::optional<LinExpr> sign_exponent;
  std::vector<BinomFactor> factors;

  friend bool operator==(const Term&, const Term&) = default;
};

/// sum_{bound_var = lower}^{upper} body; empty when lower > upper.
struct SumExpr {
  std::string bound_var;
  LinExpr lower;
  LinExpr upper;
  Term body;

  friend bool operator==(const SumExpr&, const SumExpr&) = default;
};

using Side = std::variant<SumExpr, Term>;

/// A named parameterized equation `lhs == rhs`.
///
/// Each constraint `e` asserts `e >= 0`. A constraint that mentions the
/// bound variable must hold for every index of the summation range.
struct Identity {
  std::string name;
  std::vector<std::string> params;
  std::vector<LinExpr> constraints;
  Side lhs;
  Term rhs;

  bool has_sum() const { return std::holds_alternative<SumExpr>(lhs); }
  const SumExpr& sum() const { return std::get<SumExpr>(lhs); }
  SumExpr& sum() { return std::get<SumExpr>(lhs); }
  /// The summand for a SumExpr lhs, the term itself otherwise.
  const Term& lhs_term() const;
  Term& lhs_term();
};

/// Parameter map from a parent identity onto a new parameter set.
struct Substitution {
  std::map<std::string, LinExpr> images;
  /// Parameters of the specialized identity. When empty, the variables of
  /// the images in name order.
  std::vector<std::string> target_params;
};

struct IdentityValue {
  BigInt lhs;
  BigInt rhs;
  bool holds = false;
};

BigInt eval_linexpr(const LinExpr& e, const ParamEnv& env);
BigInt eval_term(const Term& t, const ParamEnv& env);
/// Sum of the body over [lower, upper] evaluated in env.
BigInt eval_sum(const SumExpr& s, const ParamEnv& env);
BigInt eval_sum_range(const SumExpr& s, const ParamEnv& env, const BigInt& lo, const BigInt& hi);
BigInt eval_side(const Side& side, const ParamEnv& env);

/// True when env satisfies every constraint of I (including bound-variable
/// constraints over the summation range).
bool satisfies_constraints(const Identity& I, const ParamEnv& env);

/// Evaluates both sides. Throws EvalError on unbound parameters or
/// constraint violations.
IdentityValue eval_identity(const Identity& I, const ParamEnv& env);

/// Name used for the bound variable of canonical forms; depends only on the
/// parameter set so it never captures a parameter.
std::string canonical_bound_name(const std::vector<std::string>& params);

Term canonicalize(const Term& t);
Identity canonicalize(const Identity& I);

/// Applies sigma to every LinExpr of I. Unmapped parents that are also
/// target parameters map to themselves.
Identity substitute(const Identity& I, const Substitution& sigma, const std::string& new_name);
/// Like substitute, but keeps factor order and does not canonicalize; rewrite
/// chains address factors by position and rely on this.
Identity substitute_raw(const Identity& I, const Substitution& sigma, const std::string& new_name);

/// Structural comparison of canonical forms (params as a set, lhs, rhs).
/// Names and constraints do not participate.
bool structurally_equal(const Identity& a, const Identity& b, bool allow_renaming);
/// The parameter renaming (a's names to b's names) that witnesses structural
/// equality, if any.
std::optional<std::map<std::string, std::string>> find_renaming(const Identity& a, const Identity& b);

/// All variables mentioned anywhere in the identity (excluding the bound
/// variable).
std::vector<std::string> free_variables(const Identity& I);

}  // namespace binomid
