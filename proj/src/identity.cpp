#include "binomid/identity.hpp"

#include <algorithm>
#include <set>

namespace binomid {

const Term& Identity::lhs_term() const {
  return has_sum() ? std::get<SumExpr>(lhs).body : std::get<Term>(lhs);
}

Term& Identity::lhs_term() { return has_sum() ? std::get<SumExpr>(lhs).body : std::get<Term>(lhs); }

BigInt eval_linexpr(const LinExpr& e, const ParamEnv& env) { return e.eval(env); }

BigInt eval_term(const Term& t, const ParamEnv& env) {
  BigInt r = 1;
  for (const auto& f : t.factors) {
    r *= binomial(f.upper.eval(env), f.lower.eval(env));
    if (r == 0) return r;
  }
  if (t.sign_exponent && sign_power(t.sign_exponent->eval(env)) < 0) r = -r;
  return r;
}

BigInt eval_sum_range(const SumExpr& s, const ParamEnv& env, const BigInt& lo, const BigInt& hi) {
  BigInt total = 0;
  ParamEnv local = env;
  auto& k = local[s.bound_var];
  for (BigInt i = lo; i <= hi; ++i) {
    k = i;
    total += eval_term(s.body, local);
  }
  return total;
}

BigInt eval_sum(const SumExpr& s, const ParamEnv& env) {
  return eval_sum_range(s, env, s.lower.eval(env), s.upper.eval(env));
}

BigInt eval_side(const Side& side, const ParamEnv& env) {
  if (const auto* s = std::get_if<SumExpr>(&side)) return eval_sum(*s, env);
  return eval_term(std::get<Term>(side), env);
}

bool satisfies_constraints(const Identity& I, const ParamEnv& env) {
  const std::string* bound = I.has_sum() ? &I.sum().bound_var : nullptr;
  std::optional<std::pair<BigInt, BigInt>> range;
  for (const auto& c : I.constraints) {
    if (bound && c.mentions(*bound)) {
      if (!range) range.emplace(I.sum().lower.eval(env), I.sum().upper.eval(env));
      // Affine in the bound variable: checking both ends covers the range.
      if (range->first > range->second) continue;
      ParamEnv local = env;
      for (const auto& end : {range->first, range->second}) {
        local[*bound] = end;
        if (c.eval(local) < 0) return false;
      }
    } else if (c.eval(env) < 0) {
      return false;
    }
  }
  return true;
}

IdentityValue eval_identity(const Identity& I, const ParamEnv& env) {
  for (const auto& p : I.params) {
    if (!env.count(p)) throw EvalError(I.name + ": unbound parameter '" + p + "'");
  }
  if (!satisfies_constraints(I, env)) throw EvalError(I.name + ": constraint violated");
  IdentityValue v;
  v.lhs = eval_side(I.lhs, env);
  v.rhs = eval_term(I.rhs, env);
  v.holds = v.lhs == v.rhs;
  return v;
}

std::string canonical_bound_name(const std::vector<std::string>& params) {
  std::set<std::string> taken(params.begin(), params.end());
  for (const char* cand : {"k", "j", "i"}) {
    if (!taken.count(cand)) return cand;
  }
  for (int n = 0;; ++n) {
    std::string cand = "k" + std::to_string(n);
    if (!taken.count(cand)) return cand;
  }
}

Term canonicalize(const Term& t) {
  Term out;
  for (const auto& f : t.factors) {
    // C(n, 0) = 1 for every integer n.
    if (f.lower == LinExpr(0)) continue;
    out.factors.push_back(f);
  }
  std::sort(out.factors.begin(), out.factors.end());
  if (t.sign_exponent) {
    LinExpr p = t.sign_exponent->parity();
    if (p != LinExpr(0)) out.sign_exponent = p;
  }
  return out;
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& names) {
  Term out;
  if (t.sign_exponent) out.sign_exponent = t.sign_exponent->rename(names);
  for (const auto& f : t.factors) out.factors.push_back({f.upper.rename(names), f.lower.rename(names)});
  return out;
}

Term substitute_term(const Term& t, const std::map<std::string, LinExpr>& images) {
  Term out;
  if (t.sign_exponent) out.sign_exponent = t.sign_exponent->substitute(images, false);
  for (const auto& f : t.factors) {
    out.factors.push_back({f.upper.substitute(images, false), f.lower.substitute(images, false)});
  }
  return out;
}

Identity rename_identity(const Identity& I, const std::map<std::string, std::string>& names) {
  Identity out;
  out.name = I.name;
  for (const auto& p : I.params) {
    auto it = names.find(p);
    out.params.push_back(it == names.end() ? p : it->second);
  }
  for (const auto& c : I.constraints) out.constraints.push_back(c.rename(names));
  if (I.has_sum()) {
    const auto& s = I.sum();
    auto it = names.find(s.bound_var);
    out.lhs = SumExpr{it == names.end() ? s.bound_var : it->second, s.lower.rename(names),
                      s.upper.rename(names), rename_term(s.body, names)};
  } else {
    out.lhs = rename_term(std::get<Term>(I.lhs), names);
  }
  out.rhs = rename_term(I.rhs, names);
  return out;
}

}  // namespace

Identity canonicalize(const Identity& I) {
  Identity out = I;
  if (out.has_sum()) {
    std::string target = canonical_bound_name(out.params);
    if (out.sum().bound_var != target) {
      out = rename_identity(out, {{out.sum().bound_var, target}});
    }
    out.sum().body = canonicalize(out.sum().body);
  } else {
    out.lhs = canonicalize(std::get<Term>(out.lhs));
  }
  out.rhs = canonicalize(out.rhs);
  std::sort(out.constraints.begin(), out.constraints.end());
  out.constraints.erase(std::unique(out.constraints.begin(), out.constraints.end()), out.constraints.end());
  return out;
}

Identity substitute_raw(const Identity& I, const Substitution& sigma, const std::string& new_name) {
  std::vector<std::string> targets = sigma.target_params;
  if (targets.empty()) {
    std::set<std::string> seen;
    for (const auto& [p, img] : sigma.images) {
      for (const auto& v : img.vars()) seen.insert(v);
    }
    targets.assign(seen.begin(), seen.end());
  }
  std::set<std::string> target_set(targets.begin(), targets.end());

  std::map<std::string, LinExpr> images;
  for (const auto& p : I.params) {
    auto it = sigma.images.find(p);
    if (it != sigma.images.end()) {
      images[p] = it->second;
    } else if (target_set.count(p)) {
      images[p] = LinExpr::var(p);
    } else {
      throw EvalError("substitute " + I.name + ": unmapped parameter '" + p + "'");
    }
  }
  for (const auto& [p, img] : sigma.images) {
    if (std::find(I.params.begin(), I.params.end(), p) == I.params.end()) {
      throw EvalError("substitute " + I.name + ": '" + p + "' is not a parameter");
    }
    for (const auto& v : img.vars()) {
      if (!target_set.count(v)) {
        throw EvalError("substitute " + I.name + ": image of '" + p + "' uses undeclared parameter '" + v + "'");
      }
    }
  }

  Identity src = I;
  if (src.has_sum()) {
    // Keep the bound variable out of the way of the new parameters.
    const std::string bound = src.sum().bound_var;
    std::string fresh = bound;
    if (target_set.count(bound)) {
      std::vector<std::string> avoid = targets;
      avoid.insert(avoid.end(), I.params.begin(), I.params.end());
      fresh = canonical_bound_name(avoid);
      src = rename_identity(src, {{bound, fresh}});
    }
    images[fresh] = LinExpr::var(fresh);
  }

  Identity out;
  out.name = new_name;
  out.params = targets;
  for (const auto& c : src.constraints) out.constraints.push_back(c.substitute(images, false));
  if (src.has_sum()) {
    const auto& s = src.sum();
    out.lhs = SumExpr{s.bound_var, s.lower.substitute(images, false), s.upper.substitute(images, false),
                      substitute_term(s.body, images)};
  } else {
    out.lhs = substitute_term(std::get<Term>(src.lhs), images);
  }
  out.rhs = substitute_term(src.rhs, images);
  return out;
}

Identity substitute(const Identity& I, const Substitution& sigma, const std::string& new_name) {
  return canonicalize(substitute_raw(I, sigma, new_name));
}

namespace {

bool same_shape(const Identity& a, const Identity& b) {
  std::set<std::string> pa(a.params.begin(), a.params.end());
  std::set<std::string> pb(b.params.begin(), b.params.end());
  return pa == pb && a.lhs == b.lhs && a.rhs == b.rhs;
}

}  // namespace

std::optional<std::map<std::string, std::string>> find_renaming(const Identity& a, const Identity& b) {
  if (a.params.size() != b.params.size()) return std::nullopt;
  Identity cb = canonicalize(b);
  std::vector<std::string> from = a.params;
  std::vector<std::string> to = b.params;
  std::sort(to.begin(), to.end());
  do {
    std::map<std::string, std::string> names;
    for (std::size_t i = 0; i < from.size(); ++i) names[from[i]] = to[i];
    Identity renamed = rename_identity(a, names);
    // Keep the bound variable distinct from the new parameter names.
    if (renamed.has_sum()) {
      std::string bound = a.sum().bound_var;
      if (names.count(bound) == 0 &&
          std::find(to.begin(), to.end(), bound) != to.end()) {
        std::vector<std::string> avoid = to;
        avoid.insert(avoid.end(), from.begin(), from.end());
        Identity tmp = rename_identity(a, {{bound, canonical_bound_name(avoid)}});
        renamed = rename_identity(tmp, names);
      }
    }
    if (same_shape(canonicalize(renamed), cb)) return names;
  } while (std::next_permutation(to.begin(), to.end()));
  return std::nullopt;
}

bool structurally_equal(const Identity& a, const Identity& b, bool allow_renaming) {
  if (!allow_renaming) return same_shape(canonicalize(a), canonicalize(b));
  return find_renaming(a, b).has_value();
}

std::vector<std::string> free_variables(const Identity& I) {
  std::set<std::string> vars;
  auto add_term = [&](const Term& t) {
    if (t.sign_exponent) {
      for (const auto& v : t.sign_exponent->vars()) vars.insert(v);
    }
    for (const auto& f : t.factors) {
      for (const auto& v : f.upper.vars()) vars.insert(v);
      for (const auto& v : f.lower.vars()) vars.insert(v);
    }
  };
  for (const auto& c : I.constraints) {
    for (const auto& v : c.vars()) vars.insert(v);
  }
  if (I.has_sum()) {
    for (const auto& v : I.sum().lower.vars()) vars.insert(v);
    for (const auto& v : I.sum().upper.vars()) vars.insert(v);
  }
  add_term(I.lhs_term());
  add_term(I.rhs);
  if (I.has_sum()) vars.erase(I.sum().bound_var);
  return {vars.begin(), vars.end()};
}

}  // namespace binomid
