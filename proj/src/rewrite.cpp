#include "binomid/rewrite.hpp"

namespace binomid {

namespace {

void check_index(const Term& t, std::size_t i) {
  if (i >= t.factors.size()) {
    throw RewriteError("factor index " + std::to_string(i + 1) + " out of range (term has " +
                       std::to_string(t.factors.size()) + " factors)");
  }
}

void add_sign(Term& t, const LinExpr& e) {
  t.sign_exponent = t.sign_exponent ? *t.sign_exponent + e : e;
}

}  // namespace

Term rewrite_trinomial_revision(const Term& t, std::size_t i, std::size_t j) {
  check_index(t, i);
  check_index(t, j);
  if (i == j) throw RewriteError("trinomial revision needs two distinct factors");
  const BinomFactor outer = t.factors[i];
  const BinomFactor inner = t.factors[j];
  if (inner.upper != outer.lower) {
    throw RewriteError("trinomial revision pattern mismatch: C(" + outer.upper.to_string() + "," +
                       outer.lower.to_string() + ")*C(" + inner.upper.to_string() + "," +
                       inner.lower.to_string() + ")");
  }
  Term out = t;
  out.factors[i] = {outer.upper, inner.lower};
  out.factors[j] = {outer.upper - inner.lower, outer.lower - inner.lower};
  return out;
}

Term rewrite_upper_negation(const Term& t, std::size_t i) {
  check_index(t, i);
  const BinomFactor f = t.factors[i];
  Term out = t;
  out.factors[i] = {f.lower - f.upper - 1, f.lower};
  add_sign(out, f.lower);
  return out;
}

Rewritten rewrite_second_symmetry(const Term& t, std::size_t i) {
  check_index(t, i);
  const BinomFactor f = t.factors[i];
  Rewritten out{t, {f.lower, f.upper - f.lower}};
  out.term.factors[i] = {-f.lower - 1, f.upper - f.lower};
  add_sign(out.term, f.upper - f.lower);
  return out;
}

Rewritten rewrite_symmetry(const Term& t, std::size_t i) {
  check_index(t, i);
  const BinomFactor f = t.factors[i];
  Rewritten out{t, {f.upper}};
  out.term.factors[i] = {f.upper, f.upper - f.lower};
  return out;
}

std::string to_string(RewriteRule r) {
  switch (r) {
    case RewriteRule::TrinomialRevision: return "trinomial";
    case RewriteRule::UpperNegation: return "upper_negation";
    case RewriteRule::SecondSymmetry: return "second_symmetry";
    case RewriteRule::Symmetry: return "symmetry";
  }
  return "?";
}

Identity apply_rewrite(const Identity& I, IdentitySide side, RewriteRule rule, std::size_t i, std::size_t j) {
  Identity out = I;
  Term& target = side == IdentitySide::Lhs ? out.lhs_term() : out.rhs;
  std::vector<LinExpr> conditions;
  switch (rule) {
    case RewriteRule::TrinomialRevision:
      target = rewrite_trinomial_revision(target, i, j);
      break;
    case RewriteRule::UpperNegation:
      target = rewrite_upper_negation(target, i);
      break;
    case RewriteRule::SecondSymmetry: {
      auto r = rewrite_second_symmetry(target, i);
      target = std::move(r.term);
      conditions = std::move(r.side_conditions);
      break;
    }
    case RewriteRule::Symmetry: {
      auto r = rewrite_symmetry(target, i);
      target = std::move(r.term);
      conditions = std::move(r.side_conditions);
      break;
    }
  }
  for (auto& c : conditions) {
    if (!c.is_constant() || c.constant() < 0) out.constraints.push_back(std::move(c));
  }
  return out;
}

Identity balance_signs(const Identity& I) {
  Identity out = I;
  if (!out.rhs.sign_exponent) return out;
  add_sign(out.lhs_term(), *out.rhs.sign_exponent);
  out.rhs.sign_exponent.reset();
  return out;
}

}  // namespace binomid
