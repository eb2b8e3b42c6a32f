#include "binomid/series_expr.hpp"

#include <algorithm>
#include <sstream>

namespace binomid {

namespace {

using Kind = SExpr::Kind;

SExprPtr make(SExpr e) { return std::make_shared<const SExpr>(std::move(e)); }

constexpr std::int64_t kMaxSumTerms = 1'000'000;

}  // namespace

SExprPtr SExpr::make_scalar(LinExpr v) {
  SExpr e;
  e.kind = Kind::Scalar;
  e.scalar = std::move(v);
  return make(std::move(e));
}

SExprPtr SExpr::make_var(std::string name) {
  SExpr e;
  e.kind = Kind::Var;
  e.name = std::move(name);
  return make(std::move(e));
}

SExprPtr SExpr::make_binom(BinomFactor f) {
  SExpr e;
  e.kind = Kind::Binom;
  e.binom = std::move(f);
  return make(std::move(e));
}

SExprPtr SExpr::make_add(std::vector<SExprPtr> terms) {
  if (terms.size() == 1) return terms.front();
  SExpr e;
  e.kind = Kind::Add;
  e.args = std::move(terms);
  return make(std::move(e));
}

SExprPtr SExpr::make_neg(SExprPtr a) {
  SExpr e;
  e.kind = Kind::Neg;
  e.args = {std::move(a)};
  return make(std::move(e));
}

SExprPtr SExpr::make_mul(std::vector<SExprPtr> factors) {
  if (factors.size() == 1) return factors.front();
  SExpr e;
  e.kind = Kind::Mul;
  e.args = std::move(factors);
  return make(std::move(e));
}

SExprPtr SExpr::make_div(SExprPtr num, SExprPtr den) {
  SExpr e;
  e.kind = Kind::Div;
  e.args = {std::move(num), std::move(den)};
  return make(std::move(e));
}

SExprPtr SExpr::make_pow(SExprPtr base, LinExpr exponent) {
  SExpr e;
  e.kind = Kind::Pow;
  e.args = {std::move(base)};
  e.exponent = std::move(exponent);
  return make(std::move(e));
}

SExprPtr SExpr::make_res(std::string var, SExprPtr body) {
  SExpr e;
  e.kind = Kind::Res;
  e.name = std::move(var);
  e.args = {std::move(body)};
  return make(std::move(e));
}

SExprPtr SExpr::make_sum(std::string bound, LinExpr lower, std::optional<LinExpr> upper, SExprPtr body) {
  SExpr e;
  e.kind = Kind::Sum;
  e.name = std::move(bound);
  e.lower = std::move(lower);
  e.upper = std::move(upper);
  e.args = {std::move(body)};
  return make(std::move(e));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(TokenStream& ts, const std::set<std::string>& vars, const NameCheck& check)
      : ts_(ts), vars_(vars), check_(check) {}

  SExprPtr expr() {
    std::vector<SExprPtr> terms{term()};
    while (ts_.is_punct("+") || ts_.is_punct("-")) {
      bool minus = ts_.next().text == "-";
      SExprPtr t = term();
      terms.push_back(minus ? SExpr::make_neg(t) : t);
    }
    return SExpr::make_add(std::move(terms));
  }

 private:
  SExprPtr term() {
    SExprPtr acc = unary();
    std::vector<SExprPtr> factors{acc};
    while (ts_.is_punct("*") || ts_.is_punct("/")) {
      if (ts_.next().text == "*") {
        factors.push_back(unary());
      } else {
        SExprPtr num = SExpr::make_mul(std::move(factors));
        factors = {SExpr::make_div(num, unary())};
      }
    }
    return SExpr::make_mul(std::move(factors));
  }

  SExprPtr unary() {
    if (ts_.accept_punct("-")) return SExpr::make_neg(unary());
    return power();
  }

  SExprPtr power() {
    SExprPtr base = atom();
    if (!ts_.accept_punct("^")) return base;
    if (ts_.accept_punct("(")) {
      LinExpr e = linexpr();
      ts_.expect_punct(")");
      return SExpr::make_pow(base, e);
    }
    const Token& tok = ts_.peek();
    if (tok.kind == TokenKind::Int || ts_.is_punct("-")) return SExpr::make_pow(base, LinExpr(ts_.expect_int("exponent")));
    if (tok.kind == TokenKind::Ident) {
      ts_.next();
      param(tok);
      return SExpr::make_pow(base, LinExpr::var(tok.text));
    }
    ts_.fail("unexpected " + describe(tok), {"exponent"});
  }

  SExprPtr atom() {
    const Token& tok = ts_.peek();
    if (tok.kind == TokenKind::Int) return SExpr::make_scalar(LinExpr(ts_.expect_int()));
    if (ts_.accept_punct("(")) {
      SExprPtr inner = expr();
      ts_.expect_punct(")");
      return inner;
    }
    if (tok.kind != TokenKind::Ident) ts_.fail("unexpected " + describe(tok), {"expression"});
    if (tok.text == "C") return SExpr::make_binom(parse_binom(ts_, scoped_check()));
    if (tok.text == "res") return residue();
    if (tok.text == "sum") return sum();
    ts_.next();
    if (vars_.count(tok.text)) return SExpr::make_var(tok.text);
    param(tok);
    return SExpr::make_scalar(LinExpr::var(tok.text));
  }

  SExprPtr residue() {
    ts_.expect_keyword("res");
    ts_.expect_punct("(");
    std::vector<std::string> names;
    do {
      const Token& v = ts_.expect_ident("series variable");
      if (!vars_.count(v.text)) ts_.fail_at(v, "'" + v.text + "' is not a declared series variable");
      names.push_back(v.text);
    } while (ts_.accept_punct(","));
    ts_.expect_punct(")");
    ts_.expect_punct("[");
    SExprPtr body = expr();
    ts_.expect_punct("]");
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = SExpr::make_res(*it, body);
    return body;
  }

  SExprPtr sum() {
    ts_.expect_keyword("sum");
    ts_.expect_punct("(");
    const Token& k = ts_.expect_ident("summation variable");
    if (vars_.count(k.text) || std::count(scope_.begin(), scope_.end(), k.text)) {
      ts_.fail_at(k, "summation variable '" + k.text + "' shadows another name");
    }
    ts_.expect_punct(",");
    LinExpr lo = linexpr();
    ts_.expect_punct(",");
    std::optional<LinExpr> hi;
    if (!ts_.accept_ident("inf")) hi = linexpr();
    ts_.expect_punct(")");
    ts_.expect_punct("[");
    scope_.push_back(k.text);
    SExprPtr body = expr();
    scope_.pop_back();
    ts_.expect_punct("]");
    return SExpr::make_sum(k.text, lo, hi, body);
  }

  LinExpr linexpr() { return parse_linexpr(ts_, scoped_check()); }

  NameCheck scoped_check() {
    return [this](const std::string& name, const SourceSpan& span) { check_name(name, span); };
  }

  void param(const Token& tok) { check_name(tok.text, tok.span); }

  void check_name(const std::string& name, const SourceSpan& span) {
    if (vars_.count(name)) throw ParseError("series variable '" + name + "' cannot appear here", span);
    if (std::count(scope_.begin(), scope_.end(), name)) return;
    if (check_) check_(name, span);
  }

  TokenStream& ts_;
  const std::set<std::string>& vars_;
  const NameCheck& check_;
  std::vector<std::string> scope_;
};

}  // namespace

SExprPtr parse_sexpr(TokenStream& ts, const std::set<std::string>& series_vars, const NameCheck& check) {
  Parser p(ts, series_vars, check);
  return p.expr();
}

SExprPtr parse_sexpr(std::string_view text, const std::set<std::string>& series_vars) {
  TokenStream ts(text);
  SExprPtr e = parse_sexpr(ts, series_vars);
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()), {"end of input"});
  return e;
}

// --------------------------------------------------------------- printing

namespace {

bool simple_scalar(const LinExpr& v) {
  if (v.is_constant()) return v.constant() >= 0;
  return v.constant() == 0 && v.coeffs().size() == 1 && v.coeffs().begin()->second == 1;
}

std::string print_at(const SExprPtr& e, int prec);

// Precedence: 0 sum level, 1 product level, 2 unary, 3 power base.
std::string print_node(const SExprPtr& e, int& own) {
  switch (e->kind) {
    case Kind::Scalar:
      own = 4;
      return simple_scalar(e->scalar) ? e->scalar.to_string() : "(" + e->scalar.to_string() + ")";
    case Kind::Var:
      own = 4;
      return e->name;
    case Kind::Binom:
      own = 4;
      return "C(" + e->binom.upper.to_string() + "," + e->binom.lower.to_string() + ")";
    case Kind::Add: {
      own = 0;
      std::string out;
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        const SExprPtr& a = e->args[i];
        if (i > 0 && a->kind == Kind::Neg) {
          out += " - " + print_at(a->args[0], 1);
        } else {
          out += (i ? " + " : "") + print_at(a, 1);
        }
      }
      return out;
    }
    case Kind::Neg:
      own = 2;
      return "-" + print_at(e->args[0], 2);
    case Kind::Mul: {
      own = 1;
      std::string out;
      for (std::size_t i = 0; i < e->args.size(); ++i) out += (i ? "*" : "") + print_at(e->args[i], 2);
      return out;
    }
    case Kind::Div:
      own = 1;
      return print_at(e->args[0], 1) + "/" + print_at(e->args[1], 3);
    case Kind::Pow:
      own = 3;
      return print_at(e->args[0], 4) + "^(" + e->exponent.to_string() + ")";
    case Kind::Res:
      own = 4;
      return "res(" + e->name + ")[" + print_at(e->args[0], 0) + "]";
    case Kind::Sum:
      own = 4;
      return "sum(" + e->name + "," + e->lower.to_string() + "," + (e->upper ? e->upper->to_string() : "inf") +
             ")[" + print_at(e->args[0], 0) + "]";
  }
  return {};
}

std::string print_at(const SExprPtr& e, int prec) {
  int own = 0;
  std::string s = print_node(e, own);
  return own < prec ? "(" + s + ")" : s;
}

}  // namespace

std::string print_sexpr(const SExprPtr& e) { return print_at(e, 0); }

// ------------------------------------------------------------ inspection

bool mentions(const SExprPtr& e, const std::string& name) {
  switch (e->kind) {
    case Kind::Scalar:
      return e->scalar.mentions(name);
    case Kind::Var:
      return false;
    case Kind::Binom:
      return e->binom.upper.mentions(name) || e->binom.lower.mentions(name);
    case Kind::Pow:
      return e->exponent.mentions(name) || mentions(e->args[0], name);
    case Kind::Sum:
      if (e->lower.mentions(name) || (e->upper && e->upper->mentions(name))) return true;
      return e->name != name && mentions(e->args[0], name);
    default:
      return std::any_of(e->args.begin(), e->args.end(), [&](const SExprPtr& a) { return mentions(a, name); });
  }
}

SExprPtr substitute_params(const SExprPtr& e, const std::map<std::string, LinExpr>& images) {
  auto sub = [&](const LinExpr& v) { return v.substitute(images, true); };
  SExpr out = *e;
  switch (e->kind) {
    case Kind::Scalar:
      out.scalar = sub(e->scalar);
      break;
    case Kind::Var:
      break;
    case Kind::Binom:
      out.binom = {sub(e->binom.upper), sub(e->binom.lower)};
      break;
    case Kind::Pow:
      out.exponent = sub(e->exponent);
      out.args = {substitute_params(e->args[0], images)};
      break;
    case Kind::Sum: {
      out.lower = sub(e->lower);
      if (e->upper) out.upper = sub(*e->upper);
      auto inner = images;
      inner.erase(e->name);
      for (const auto& [k, v] : inner) {
        if (v.mentions(e->name)) throw EvalError("substitution would capture summation variable '" + e->name + "'");
      }
      out.args = {substitute_params(e->args[0], inner)};
      break;
    }
    default:
      for (auto& a : out.args) a = substitute_params(a, images);
  }
  return make(std::move(out));
}

std::pair<std::vector<std::string>, SExprPtr> peel_residues(const SExprPtr& e) {
  std::vector<std::string> vars;
  SExprPtr cur = e;
  while (cur->kind == Kind::Res) {
    vars.push_back(cur->name);
    cur = cur->args[0];
  }
  return {vars, cur};
}

std::optional<Term> as_term(const SExprPtr& e) {
  Term t;
  auto absorb = [&](const SExprPtr& f) -> bool {
    if (f->kind == Kind::Binom) {
      t.factors.push_back(f->binom);
      return true;
    }
    if (f->kind == Kind::Scalar && f->scalar == LinExpr(1)) return true;
    if (f->kind == Kind::Pow) {
      const SExprPtr& b = f->args[0];
      bool minus_one = (b->kind == Kind::Scalar && b->scalar == LinExpr(-1)) ||
                       (b->kind == Kind::Neg && b->args[0]->kind == Kind::Scalar && b->args[0]->scalar == LinExpr(1));
      if (!minus_one) return false;
      t.sign_exponent = t.sign_exponent.value_or(LinExpr(0)) + f->exponent;
      return true;
    }
    return false;
  };
  if (e->kind == Kind::Mul) {
    for (const auto& f : e->args) {
      if (!absorb(f)) return std::nullopt;
    }
    return t;
  }
  if (!absorb(e)) return std::nullopt;
  return t;
}

std::optional<SumExpr> as_sum_expr(const SExprPtr& e) {
  if (e->kind != Kind::Sum || !e->upper) return std::nullopt;
  auto body = as_term(e->args[0]);
  if (!body) return std::nullopt;
  return SumExpr{e->name, e->lower, *e->upper, *body};
}

// ------------------------------------------------------------- evaluation

namespace {

Rational to_rational(const BigInt& v) { return Rational(v); }

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Affine lower bound on the valuation in each variable of a summand, as a
/// function of t = k - lower, plus the index from which it is identically 0.
struct Certificate {
  std::vector<std::int64_t> slope;
  std::vector<std::int64_t> intercept;
  std::optional<std::int64_t> zero_from;
};

class Evaluator {
 public:
  Evaluator(const ParamEnv& env, ContextPtr ctx) : env_(env), ctx_(std::move(ctx)) {}

  LaurentSeries eval(const SExprPtr& e) {
    switch (e->kind) {
      case Kind::Scalar:
        return LaurentSeries::constant(ctx_, to_rational(e->scalar.eval(env_)));
      case Kind::Var:
        return LaurentSeries::variable(ctx_, e->name);
      case Kind::Binom:
        return LaurentSeries::constant(ctx_, to_rational(binomial(e->binom.upper.eval(env_), e->binom.lower.eval(env_))));
      case Kind::Add: {
        LaurentSeries acc = eval(e->args[0]);
        for (std::size_t i = 1; i < e->args.size(); ++i) acc = acc + eval(e->args[i]);
        return acc;
      }
      case Kind::Neg:
        return -eval(e->args[0]);
      case Kind::Mul: {
        LaurentSeries acc = eval(e->args[0]);
        for (std::size_t i = 1; i < e->args.size() && !acc.is_zero(); ++i) acc = acc * eval(e->args[i]);
        return acc;
      }
      case Kind::Div:
        return eval(e->args[0]) * eval(e->args[1]).inverse();
      case Kind::Pow: {
        const SExprPtr& base = e->args[0];
        BigInt exp = e->exponent.eval(env_);
        if (base->kind == Kind::Var) {
          return LaurentSeries::monomial(ctx_, {{base->name, to_int64(exp)}});
        }
        return eval(base).pow(exp);
      }
      case Kind::Res:
        return eval(e->args[0]).res(e->name);
      case Kind::Sum:
        return e->upper ? finite_sum(*e) : infinite_sum(*e);
    }
    throw EvalError("bad series expression");
  }

 private:
  class Binding {
   public:
    Binding(ParamEnv& env, const std::string& name) : env_(env), name_(name) {
      auto it = env.find(name);
      if (it != env.end()) saved_ = it->second;
    }
    ~Binding() {
      if (saved_) {
        env_[name_] = *saved_;
      } else {
        env_.erase(name_);
      }
    }
    Binding(const Binding&) = delete;
    Binding& operator=(const Binding&) = delete;

   private:
    ParamEnv& env_;
    std::string name_;
    std::optional<BigInt> saved_;
  };

  LaurentSeries finite_sum(const SExpr& s) {
    const BigInt lo = s.lower.eval(env_);
    const BigInt hi = s.upper->eval(env_);
    if (hi - lo >= kMaxSumTerms) throw EvalError("summation range too large");
    LaurentSeries acc = LaurentSeries::zero(ctx_);
    Binding bind(env_, s.name);
    for (BigInt k = lo; k <= hi; ++k) {
      env_[s.name] = k;
      acc = acc + eval(s.args[0]);
    }
    return acc;
  }

  LaurentSeries infinite_sum(const SExpr& s) {
    const BigInt lo = s.lower.eval(env_);
    const SExprPtr& body = s.args[0];
    // sum_{k>=lo} r^k = r^lo / (1 - r)
    if (body->kind == Kind::Pow && body->exponent == LinExpr::var(s.name) && !mentions(body->args[0], s.name)) {
      LaurentSeries r = eval(body->args[0]);
      return r.pow(lo) * geometric_collapse(r);
    }
    Certificate cert;
    {
      Binding bind(env_, s.name);
      env_.erase(s.name);
      cert = certify(body, s.name, to_int64(lo));
    }
    std::int64_t count = 0;
    std::optional<std::size_t> cut_var;
    if (cert.zero_from) {
      count = std::max<std::int64_t>(*cert.zero_from, 0);
    } else {
      for (std::size_t v = 0; v < cert.slope.size(); ++v) {
        if (cert.slope[v] <= 0) continue;
        std::int64_t t = std::max<std::int64_t>(floor_div(ctx_->caps[v] - cert.intercept[v], cert.slope[v]) + 1, 1);
        if (!cut_var || t < count) {
          count = t;
          cut_var = v;
        }
      }
      if (!cut_var) throw EvalError("divergent formal sum: cannot certify that the terms of sum over '" + s.name + "' vanish");
    }
    if (count > kMaxSumTerms) throw EvalError("infinite sum needs too many terms");
    LaurentSeries acc = LaurentSeries::zero(ctx_);
    Binding bind(env_, s.name);
    for (std::int64_t t = 0; t < count; ++t) {
      env_[s.name] = lo + t;
      acc = acc + eval(body);
    }
    if (cut_var) acc = acc.truncated(*cut_var, ctx_->caps[*cut_var]);
    return acc;
  }

  Certificate constant_bound(const LaurentSeries& s) {
    const std::size_t n = ctx_->vars.size();
    Certificate c{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), std::nullopt};
    if (s.is_zero()) {
      c.zero_from = 0;
      return c;
    }
    for (std::size_t v = 0; v < n; ++v) c.intercept[v] = s.lo(v);
    return c;
  }

  [[noreturn]] void uncertifiable(const std::string& k, const SExprPtr& e) {
    throw EvalError("divergent formal sum: cannot certify sum over '" + k + "' through " + print_sexpr(e));
  }

  Certificate certify(const SExprPtr& e, const std::string& k, std::int64_t k0) {
    const std::size_t n = ctx_->vars.size();
    if (!mentions(e, k)) return constant_bound(eval(e));
    switch (e->kind) {
      case Kind::Scalar:
        return Certificate{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), std::nullopt};
      case Kind::Binom: {
        Certificate c{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), std::nullopt};
        // C(u, gamma*k + delta) vanishes once the lower index drops below 0,
        // or, for a fixed u >= 0, once it passes u.
        const std::int64_t gamma = e->binom.lower.coeff(k);
        const std::int64_t delta = to_int64((e->binom.lower - LinExpr::var(k, gamma)).eval(env_));
        std::optional<std::int64_t> kz;
        if (gamma < 0) {
          kz = floor_div(delta, -gamma) + 1;
        } else if (gamma > 0 && e->binom.upper.coeff(k) == 0) {
          const std::int64_t u = to_int64(e->binom.upper.eval(env_));
          if (u >= 0) kz = floor_div(u - delta, gamma) + 1;
        }
        if (kz) c.zero_from = std::max<std::int64_t>(*kz - k0, 0);
        return c;
      }
      case Kind::Add: {
        Certificate acc = certify(e->args[0], k, k0);
        for (std::size_t i = 1; i < e->args.size(); ++i) {
          Certificate c = certify(e->args[i], k, k0);
          for (std::size_t v = 0; v < n; ++v) {
            acc.slope[v] = std::min(acc.slope[v], c.slope[v]);
            acc.intercept[v] = std::min(acc.intercept[v], c.intercept[v]);
          }
          if (acc.zero_from && c.zero_from) {
            acc.zero_from = std::max(*acc.zero_from, *c.zero_from);
          } else {
            acc.zero_from.reset();
          }
        }
        return acc;
      }
      case Kind::Neg:
        return certify(e->args[0], k, k0);
      case Kind::Mul: {
        Certificate acc = certify(e->args[0], k, k0);
        for (std::size_t i = 1; i < e->args.size(); ++i) {
          Certificate c = certify(e->args[i], k, k0);
          for (std::size_t v = 0; v < n; ++v) {
            acc.slope[v] += c.slope[v];
            acc.intercept[v] += c.intercept[v];
          }
          if (c.zero_from) acc.zero_from = acc.zero_from ? std::min(*acc.zero_from, *c.zero_from) : *c.zero_from;
        }
        return acc;
      }
      case Kind::Div: {
        if (mentions(e->args[1], k)) uncertifiable(k, e);
        Certificate acc = certify(e->args[0], k, k0);
        LaurentSeries den = eval(e->args[1]);
        if (den.is_zero()) throw EvalError("division by zero series");
        for (std::size_t v = 0; v < n; ++v) acc.intercept[v] -= den.lo(v);
        return acc;
      }
      case Kind::Pow: {
        if (mentions(e->args[0], k)) uncertifiable(k, e);
        LaurentSeries base = eval(e->args[0]);
        if (base.is_zero()) uncertifiable(k, e);
        // exponent = alpha*k + beta, so in t = k - k0 it is alpha*t + alpha*k0 + beta.
        const std::int64_t alpha = e->exponent.coeff(k);
        const std::int64_t beta = to_int64((e->exponent - LinExpr::var(k, alpha)).eval(env_));
        Certificate c{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0), std::nullopt};
        for (std::size_t v = 0; v < n; ++v) {
          c.slope[v] = alpha * base.lo(v);
          c.intercept[v] = (alpha * k0 + beta) * base.lo(v);
        }
        return c;
      }
      case Kind::Res: {
        Certificate c = certify(e->args[0], k, k0);
        const std::size_t v = ctx_->index_of(e->name);
        const std::int64_t r = ctx_->to_internal(v, -1);
        // The residue vanishes once the valuation in v passes r.
        std::optional<std::int64_t> vanish;
        if (c.slope[v] > 0) {
          vanish = std::max<std::int64_t>(floor_div(r - c.intercept[v], c.slope[v]) + 1, 0);
        } else if (c.slope[v] == 0 && c.intercept[v] > r) {
          vanish = 0;
        }
        if (vanish) c.zero_from = c.zero_from ? std::min(*c.zero_from, *vanish) : *vanish;
        c.slope[v] = 0;
        c.intercept[v] = 0;
        return c;
      }
      case Kind::Var:
      case Kind::Sum:
        break;
    }
    uncertifiable(k, e);
  }

  ParamEnv env_;
  ContextPtr ctx_;
};

}  // namespace

LaurentSeries eval_series(const SExprPtr& e, const ParamEnv& env, const ContextPtr& ctx) {
  Evaluator ev(env, ctx);
  return ev.eval(e);
}

LaurentSeries series_expand(const SExprPtr& e, const ParamEnv& env, const std::vector<VarSpec>& vars,
                            const std::map<std::string, std::pair<std::int64_t, std::int64_t>>& window) {
  auto ctx = std::make_shared<SeriesContext>();
  ctx->vars = vars;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    auto it = window.find(vars[v].name);
    if (it == window.end()) throw EvalError("no window for series variable '" + vars[v].name + "'");
    auto [lo, hi] = it->second;
    if (lo > hi) throw EvalError("window empty for '" + vars[v].name + "'");
    ctx->caps.push_back(vars[v].orientation == Orientation::Small ? hi : -lo);
  }
  LaurentSeries s = eval_series(e, env, ctx);
  for (std::size_t v = 0; v < vars.size(); ++v) s = s.truncated(v, ctx->caps[v]);
  return s;
}

}  // namespace binomid
