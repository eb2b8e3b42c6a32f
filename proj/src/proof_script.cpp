#include "binomid/proof_script.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "binomid/dsl.hpp"

namespace binomid {

namespace {

constexpr std::pair<StepKind, std::string_view> kKinds[] = {
    {StepKind::IntegralRep, "IntegralRep"},       {StepKind::GeometricCollapse, "GeometricCollapse"},
    {StepKind::ResidueEval, "ResidueEval"},       {StepKind::AlgebraicRewrite, "AlgebraicRewrite"},
    {StepKind::BinomExpand, "BinomExpand"},       {StepKind::CollectResidues, "CollectResidues"},
    {StepKind::Recognize, "Recognize"},
};

Term multiply(Term a, const Term& b) {
  for (const auto& f : b.factors) a.factors.push_back(f);
  if (b.sign_exponent) a.sign_exponent = a.sign_exponent.value_or(LinExpr(0)) + *b.sign_exponent;
  return a;
}

OrderedEnv ordered(const Identity& I, const ParamEnv& env) {
  OrderedEnv out;
  for (const auto& p : I.params) out.emplace_back(p, env.at(p));
  return out;
}

std::string env_text(const ParamEnv& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : env) {
    out += (first ? "" : ",") + k + ":" + v.str();
    first = false;
  }
  return out + "}";
}

const Identity& require_identity(const IdentityLookup& lookup, const std::string& name) {
  const Identity* I = lookup(name);
  if (!I) throw EvalError("unknown identity '" + name + "'");
  return *I;
}

}  // namespace

std::string to_string(StepKind k) {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return std::string(name);
  }
  return "?";
}

std::optional<StepKind> step_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKinds) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

const SExprPtr& ProofScript::before(std::size_t i) const { return i == 0 ? start : steps[i - 1].after; }

Term ProofScript::carry_before(std::size_t i) const {
  Term carry;
  for (std::size_t j = 0; j < i && j < steps.size(); ++j) {
    if (steps[j].factor) carry = multiply(carry, *steps[j].factor);
  }
  return carry;
}

// ---------------------------------------------------------------- parsing

std::vector<ProofScript> parse_proof_scripts(std::string_view text, const IdentityLookup& lookup) {
  TokenStream ts(text);
  std::vector<ProofScript> scripts;
  std::set<std::string> names;
  while (!ts.at_end()) {
    ProofScript s;
    ts.expect_keyword("proof");
    SourceSpan name_span;
    s.name = ts.expect_dashed_name(&name_span);
    if (!names.insert(s.name).second) throw ParseError("duplicate proof '" + s.name + "'", name_span);
    ts.expect_keyword("proves");
    const Token& id_tok = ts.expect_ident("identity name");
    const Identity* proved = lookup(id_tok.text);
    if (!proved) ts.fail_at(id_tok, "unknown identity '" + id_tok.text + "'");
    s.identity = id_tok.text;
    const std::set<std::string> params(proved->params.begin(), proved->params.end());

    ts.expect_keyword("vars");
    ts.expect_punct("{");
    std::set<std::string> series_vars;
    do {
      const Token& v = ts.expect_ident("series variable");
      if (params.count(v.text) || !series_vars.insert(v.text).second) {
        ts.fail_at(v, "series variable '" + v.text + "' clashes with another name");
      }
      ts.expect_punct(":");
      Orientation o = Orientation::Small;
      if (ts.accept_ident("large")) {
        o = Orientation::Large;
      } else if (!ts.accept_ident("small")) {
        ts.fail("unexpected " + describe(ts.peek()), {"'small'", "'large'"});
      }
      s.vars.push_back({v.text, o});
    } while (ts.accept_punct(","));
    ts.expect_punct("}");

    auto param_check = [&](const std::string& name, const SourceSpan& span) {
      if (!params.count(name)) throw ParseError("unknown parameter '" + name + "'", span);
    };
    if (ts.is_ident("let")) {
      ts.next();
      const Token& open = ts.peek();
      s.lets = parse_assignments(ts, param_check);
      for (const auto& [k, v] : s.lets) {
        if (params.count(k) || series_vars.count(k)) ts.fail_at(open, "let name '" + k + "' clashes with another name");
      }
    }
    auto scoped_check = [&](const std::string& name, const SourceSpan& span) {
      if (!params.count(name) && !s.lets.count(name)) throw ParseError("unknown parameter '" + name + "'", span);
    };
    while (ts.accept_ident("require")) {
      s.constraints.push_back(parse_linexpr(ts, scoped_check));
      ts.expect_punct(">=");
      const Token& zero = ts.peek();
      if (ts.expect_int() != 0) ts.fail_at(zero, "constraints have the form 'expr >= 0'");
    }
    ts.expect_keyword("start");
    s.start = parse_sexpr(ts, series_vars, scoped_check);

    while (ts.is_ident("step")) {
      ProofStep step;
      const SourceSpan from = ts.next().span;
      const Token& kind_tok = ts.expect_ident("step kind");
      auto kind = step_kind_from_string(kind_tok.text);
      if (!kind) {
        std::vector<std::string> expected;
        for (const auto& [k, n] : kKinds) expected.emplace_back(n);
        ts.fail_at(kind_tok, "unknown step kind '" + kind_tok.text + "'", expected);
      }
      step.kind = *kind;
      if (ts.peek().kind != TokenKind::String) ts.fail("unexpected " + describe(ts.peek()), {"note string"});
      step.note = ts.next().text;
      if (step.kind == StepKind::Recognize) {
        const Token& t = ts.expect_ident("identity name");
        const Identity* target = lookup(t.text);
        if (!target) ts.fail_at(t, "unknown identity '" + t.text + "'");
        step.target = t.text;
        ts.expect_keyword("with");
        step.map = parse_assignments(ts, scoped_check);
        for (const auto& p : target->params) {
          if (!step.map.count(p)) ts.fail_at(t, "map does not assign parameter '" + p + "' of " + t.text);
        }
        for (const auto& [k, v] : step.map) {
          if (std::find(target->params.begin(), target->params.end(), k) == target->params.end()) {
            ts.fail_at(t, "'" + k + "' is not a parameter of " + t.text);
          }
        }
      } else {
        if (ts.accept_ident("factor")) step.factor = parse_term(ts, scoped_check);
        ts.expect_punct("=>");
        step.after = parse_sexpr(ts, series_vars, scoped_check);
      }
      step.span = ts.span_from(from);
      if (!s.steps.empty() && s.steps.back().kind == StepKind::Recognize) {
        throw ParseError("Recognize must be the last step", step.span);
      }
      s.steps.push_back(std::move(step));
    }
    if (s.steps.empty()) ts.fail("proof '" + s.name + "' has no steps", {"'step'"});
    ts.expect_keyword("end");
    scripts.push_back(std::move(s));
  }
  return scripts;
}

// ------------------------------------------------------------- instances

ParamEnv bind_lets(const ProofScript& s, const ParamEnv& instance) {
  ParamEnv env = instance;
  for (const auto& [k, v] : s.lets) env[k] = v.eval(instance);
  return env;
}

bool instance_applies(const ProofScript& s, const Identity& proved, const ParamEnv& instance) {
  ParamEnv env = bind_lets(s, instance);
  for (const auto& c : s.constraints) {
    if (c.eval(env) < 0) return false;
  }
  return satisfies_constraints(proved, instance);
}

std::vector<ParamEnv> script_instances(const ProofScript& s, const Identity& proved, const GridSpec& grid) {
  std::vector<ParamEnv> out;
  const std::uint64_t total = grid.total(proved);
  const std::size_t n = proved.params.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    ParamEnv env;
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      const auto [lo, hi] = grid.ranges.at(proved.params[i]);
      const std::uint64_t size = static_cast<std::uint64_t>(hi - lo) + 1;
      env[proved.params[i]] = lo + static_cast<long long>(rest % size);
      rest /= size;
    }
    if (instance_applies(s, proved, env)) out.push_back(std::move(env));
  }
  return out;
}

std::vector<ParamEnv> script_instances(const ProofScript& s, const Identity& proved, long long lo, long long hi) {
  return script_instances(s, proved, GridSpec::uniform(proved, lo, hi));
}

// ------------------------------------------------------------ comparison

namespace {

std::string monomial_text(const SeriesContext& ctx, const Exponents& e) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    out += (out.empty() ? "" : "*") + ctx.vars[v].name + "^" + std::to_string(ctx.to_internal(v, e[v]));
  }
  return out.empty() ? "1" : out;
}

/// Compares two series on the intersection of their windows. Every
/// variable in `residue_vars` must have its residue coefficient inside.
StepOutcome compare_series(const LaurentSeries& b, const LaurentSeries& a, const std::vector<std::string>& residue_vars,
                           const std::string& what) {
  const SeriesContext& ctx = *b.context();
  const std::size_t n = ctx.vars.size();
  std::vector<std::int64_t> hi(n);
  for (std::size_t v = 0; v < n; ++v) {
    hi[v] = std::min(b.hi(v), a.hi(v));
    const std::int64_t lo = std::min(b.lo(v), a.lo(v));
    if (hi[v] < lo && lo < kUnbounded) {
      throw WindowError("degenerate window in '" + ctx.vars[v].name + "' comparing " + what);
    }
  }
  for (const auto& name : residue_vars) {
    std::size_t v = ctx.index_of(name);
    if (hi[v] < ctx.to_internal(v, -1)) {
      throw WindowError("window in '" + name + "' does not reach the residue comparing " + what);
    }
  }
  std::set<Exponents> keys;
  for (const auto* s : {&b, &a}) {
    for (const auto& [e, c] : s->terms()) {
      bool inside = true;
      for (std::size_t v = 0; v < n && inside; ++v) inside = e[v] <= hi[v];
      if (inside) keys.insert(e);
    }
  }
  for (const auto& e : keys) {
    Rational cb = b.coeff_internal(e);
    Rational ca = a.coeff_internal(e);
    if (cb != ca) {
      StepOutcome out;
      out.detail = what + ": coefficient of " + monomial_text(ctx, e) + " is " + to_string(cb) + " before, " +
                   to_string(ca) + " after";
      return out;
    }
  }
  return {true, {}, {}};
}

LaurentSeries residue_over(LaurentSeries s, const std::vector<std::string>& vars, const std::vector<std::string>& keep) {
  for (const auto& v : vars) {
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) s = s.res(v);
  }
  return s;
}

}  // namespace

StepOutcome compare_expressions(const SExprPtr& before, const SExprPtr& after, const Rational& factor,
                                const ParamEnv& env, const std::vector<VarSpec>& vars, const ComparisonOptions& opt) {
  auto [vars_b, body_b] = peel_residues(before);
  auto [vars_a, body_a] = peel_residues(after);
  std::vector<std::string> common;
  for (const auto& v : vars_b) {
    if (std::find(vars_a.begin(), vars_a.end(), v) != vars_a.end()) common.push_back(v);
  }
  for (int attempt = 0;; ++attempt) {
    ContextPtr ctx = make_context(vars, opt.window << attempt);
    try {
      StepOutcome out;
      LaurentSeries vb = eval_series(before, env, ctx);
      LaurentSeries va = eval_series(after, env, ctx).scaled(factor);
      out = compare_series(vb, va, {}, "value");
      if (opt.want_trace) out.trace += "  before " + vb.to_string() + "  after  " + va.to_string();
      if (!out.passed || common.empty()) return out;
      LaurentSeries ib = residue_over(eval_series(body_b, env, ctx), vars_b, common);
      LaurentSeries ia = residue_over(eval_series(body_a, env, ctx), vars_a, common).scaled(factor);
      StepOutcome inner = compare_series(ib, ia, common, "integrand");
      if (opt.want_trace) inner.trace = out.trace + "  integrand before " + ib.to_string() + "  integrand after  " + ia.to_string();
      return inner;
    } catch (const WindowError&) {
      if (attempt >= opt.max_doublings) throw;
    }
  }
}

StepOutcome check_step(const ProofScript& s, std::size_t i, const ParamEnv& instance, const IdentityLookup& lookup,
                       const ComparisonOptions& opt) {
  if (i >= s.steps.size()) throw EvalError("step index out of range");
  const ProofStep& step = s.steps[i];
  const ParamEnv env = bind_lets(s, instance);
  if (step.kind != StepKind::Recognize) {
    Rational factor = step.factor ? Rational(eval_term(*step.factor, env)) : Rational(1);
    return compare_expressions(s.before(i), step.after, factor, env, s.vars, opt);
  }

  const Identity& proved = require_identity(lookup, s.identity);
  const Identity& target = require_identity(lookup, step.target);
  ParamEnv mapped;
  for (const auto& p : target.params) mapped[p] = step.map.at(p).eval(env);
  ContextPtr ctx = make_context(s.vars, opt.window);
  const Rational final_value = eval_series(s.before(i), env, ctx).constant_value();
  const BigInt lhs_t = eval_side(target.lhs, mapped);
  const BigInt rhs_t = eval_term(target.rhs, mapped);
  const BigInt carry = eval_term(s.carry_before(i), env);
  const BigInt rhs_i = eval_term(proved.rhs, env);
  StepOutcome out;
  if (opt.want_trace) {
    out.trace = "  " + step.target + " at " + env_text(mapped) + ": lhs " + lhs_t.str() + ", rhs " + rhs_t.str() +
                ", carry " + carry.str() + "\n";
  }
  if (!satisfies_constraints(target, mapped)) {
    out.detail = step.target + " constraints fail at " + env_text(mapped);
  } else if (final_value != Rational(lhs_t)) {
    out.detail = "final expression is " + to_string(final_value) + ", " + step.target + " left side is " + lhs_t.str();
  } else if (lhs_t != rhs_t) {
    out.detail = step.target + " does not hold at " + env_text(mapped);
  } else if (carry * rhs_t != rhs_i) {
    out.detail = "carried factor times " + step.target + " right side is " + BigInt(carry * rhs_t).str() + ", expected " +
                 rhs_i.str();
  } else {
    out.passed = true;
  }
  return out;
}

StepOutcome check_structure(const ProofScript& s, const IdentityLookup& lookup) {
  const Identity& proved = require_identity(lookup, s.identity);
  StepOutcome out;
  auto unlet_term = [&](Term t) {
    if (t.sign_exponent) t.sign_exponent = t.sign_exponent->substitute(s.lets, true);
    for (auto& f : t.factors) f = {f.upper.substitute(s.lets, true), f.lower.substitute(s.lets, true)};
    return t;
  };
  auto unlet = [&](Side side) -> Side {
    if (auto* sum = std::get_if<SumExpr>(&side)) {
      sum->lower = sum->lower.substitute(s.lets, true);
      sum->upper = sum->upper.substitute(s.lets, true);
      sum->body = unlet_term(sum->body);
      return side;
    }
    return unlet_term(std::get<Term>(side));
  };
  auto side_of = [](const SExprPtr& e) -> std::optional<Side> {
    if (auto sum = as_sum_expr(e)) return Side(*sum);
    if (auto term = as_term(e)) return Side(*term);
    return std::nullopt;
  };
  auto same_side = [&](const Side& a, const Side& b) {
    Identity x{"x", proved.params, {}, a, Term{}};
    Identity y{"y", proved.params, {}, b, Term{}};
    return structurally_equal(canonicalize(x), canonicalize(y), false);
  };

  auto start = side_of(s.start);
  if (!start || !same_side(unlet(*start), proved.lhs)) {
    out.detail = "start expression is not the left side of " + s.identity;
    return out;
  }
  if (s.steps.back().kind != StepKind::Recognize) {
    out.passed = true;
    out.detail = "no Recognize step";
    return out;
  }
  const ProofStep& rec = s.steps.back();
  const Identity& target = require_identity(lookup, rec.target);
  auto final_side = side_of(s.before(s.steps.size() - 1));
  if (!final_side) {
    out.detail = "final expression is not a sum of binomial products";
    return out;
  }
  Substitution sigma;
  sigma.target_params = proved.params;
  for (const auto& [k, v] : rec.map) sigma.images[k] = v.substitute(s.lets, true);
  Identity mapped = substitute(target, sigma, target.name + "-mapped");
  if (!same_side(unlet(*final_side), mapped.lhs)) {
    out.detail = "final expression is not " + rec.target + " under the map";
    return out;
  }
  Term product = multiply(mapped.rhs, s.carry_before(s.steps.size() - 1));
  Identity lhs_form{"x", proved.params, {}, Side(Term{}), product};
  Identity rhs_form{"y", proved.params, {}, Side(Term{}), proved.rhs};
  if (!structurally_equal(canonicalize(lhs_form), canonicalize(rhs_form), false)) {
    out.detail = "mapped right side of " + rec.target + " times the carried factors is not the right side of " + s.identity;
    return out;
  }
  out.passed = true;
  return out;
}

// ---------------------------------------------------------------- runner

ProofReport run_proof_script(const ProofScript& s, const std::vector<ParamEnv>& instances, const IdentityLookup& lookup,
                             const ComparisonOptions& opt, unsigned jobs) {
  const Identity& proved = require_identity(lookup, s.identity);
  ProofReport report;
  report.script = s.name;
  report.identity = s.identity;
  report.instances = instances.size();
  report.structure = check_structure(s, lookup);
  report.steps.push_back({"start"});
  for (const auto& st : s.steps) report.steps.push_back({to_string(st.kind) + " (" + st.note + ")"});

  const std::size_t nsteps = s.steps.size() + 1;
  std::vector<std::vector<StepOutcome>> results(instances.size());
  auto run_one = [&](std::size_t idx) {
    const ParamEnv& inst = instances[idx];
    auto& row = results[idx];
    row.resize(nsteps);
    try {
      if (!instance_applies(s, proved, inst)) {
        row[0].detail = "instance violates the script constraints";
        return;
      }
      ContextPtr ctx = make_context(s.vars, opt.window);
      Rational start = eval_series(s.start, bind_lets(s, inst), ctx).constant_value();
      BigInt lhs = eval_side(proved.lhs, inst);
      row[0].passed = start == Rational(lhs);
      if (!row[0].passed) row[0].detail = "start is " + to_string(start) + ", left side is " + lhs.str();
      if (opt.want_trace) row[0].trace = "  start value " + to_string(start) + "\n";
    } catch (const Error& e) {
      row[0].detail = std::string("error: ") + e.what();
    }
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      try {
        row[i + 1] = check_step(s, i, inst, lookup, opt);
      } catch (const Error& e) {
        row[i + 1].passed = false;
        row[i + 1].detail = std::string("error: ") + e.what();
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(instances.size(), 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = instances.size() * w / workers;
        const std::size_t end = instances.size() * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) run_one(i);
      });
    }
  }

  std::ostringstream trace;
  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    if (opt.want_trace) trace << "instance " << env_text(instances[idx]) << "\n";
    for (std::size_t i = 0; i < nsteps; ++i) {
      const StepOutcome& o = results[idx][i];
      (o.passed ? report.steps[i].passed : report.steps[i].failed) += 1;
      if (!o.passed && (!report.first_failure || i < report.first_failure->step)) {
        report.first_failure = ProofFailure{i, ordered(proved, instances[idx]), o.detail};
      }
      if (opt.want_trace) trace << "step " << i << " " << report.steps[i].label << (o.passed ? " ok" : " FAIL") << "\n" << o.trace;
    }
  }
  report.trace = trace.str();
  return report;
}

std::string to_text(const ProofReport& r) {
  std::ostringstream out;
  out << r.script << " (" << r.identity << "): " << (r.passed() ? "PASS" : "FAIL") << "  instances=" << r.instances
      << '\n';
  out << "  structure: " << (r.structure.passed ? "ok" : "FAIL " + r.structure.detail) << '\n';
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& st = r.steps[i];
    out << "  " << i << " " << st.label << ": " << st.passed << " passed, " << st.failed << " failed\n";
  }
  if (r.first_failure) {
    out << "  first failure at step " << r.first_failure->step << " {";
    for (std::size_t k = 0; k < r.first_failure->instance.size(); ++k) {
      out << (k ? "," : "") << r.first_failure->instance[k].first << ":" << r.first_failure->instance[k].second;
    }
    out << "}: " << r.first_failure->detail << '\n';
  }
  return out.str();
}

}  // namespace binomid
