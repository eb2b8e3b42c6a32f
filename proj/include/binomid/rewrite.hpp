#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "binomid/identity.hpp"

namespace binomid {

/// A rewritten term together with the conditions (each `e >= 0`) under which
/// the rewrite preserves value.
struct Rewritten {
  Term term;
  std::vector<LinExpr> side_conditions;
};

/// C(a,k) * C(k,c) -> C(a,c) * C(a-c,k-c), where factor j's upper equals
/// factor i's lower. The two new factors take positions i and j. Holds for
/// all integers.
Term rewrite_trinomial_revision(const Term& t, std::size_t i, std::size_t j);

/// C(n,k) -> (-1)^k C(k-n-1,k), sign merged into the term's exponent.
/// Holds for all integers.
Term rewrite_upper_negation(const Term& t, std::size_t i);

/// C(n,k) -> (-1)^(n-k) C(-k-1,n-k). Valid when k >= 0 and n-k >= 0; both
/// are returned as side conditions.
Rewritten rewrite_second_symmetry(const Term& t, std::size_t i);

/// C(n,k) -> C(n,n-k). Valid when n >= 0.
Rewritten rewrite_symmetry(const Term& t, std::size_t i);

enum class IdentitySide { Lhs, Rhs };

enum class RewriteRule { TrinomialRevision, UpperNegation, SecondSymmetry, Symmetry };

std::string to_string(RewriteRule r);

/// Applies a term rewrite to one side of an identity (the summand for a sum)
/// and records side conditions as identity constraints.
Identity apply_rewrite(const Identity& I, IdentitySide side, RewriteRule rule, std::size_t i,
                       std::size_t j = 0);

/// Multiplies both sides by (-1)^(rhs sign exponent), moving the right-hand
/// sign into the summand. Changes the values of both sides but not whether
/// they agree.
Identity balance_signs(const Identity& I);

}  // namespace binomid
