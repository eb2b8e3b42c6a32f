#include "binomid/laurent_series.hpp"

#include <algorithm>
#include <sstream>

namespace binomid {

namespace {

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
  return a + b;
}

bool within(const Exponents& e, const std::vector<std::int64_t>& hi) {
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] > hi[v]) return false;
  }
  return true;
}

}  // namespace

std::size_t SeriesContext::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == name) return i;
  }
  throw EvalError("unknown series variable '" + name + "'");
}

bool SeriesContext::has(const std::string& name) const {
  return std::any_of(vars.begin(), vars.end(), [&](const VarSpec& v) { return v.name == name; });
}

std::int64_t SeriesContext::to_internal(std::size_t var, std::int64_t user_exp) const {
  return vars[var].orientation == Orientation::Small ? user_exp : -user_exp;
}

ContextPtr make_context(std::vector<VarSpec> vars, std::int64_t cap) {
  auto ctx = std::make_shared<SeriesContext>();
  ctx->caps.assign(vars.size(), cap);
  ctx->vars = std::move(vars);
  return ctx;
}

std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

LaurentSeries::LaurentSeries(ContextPtr ctx)
    : ctx_(std::move(ctx)), lo_(ctx_->vars.size(), kUnbounded), hi_(ctx_->vars.size(), kUnbounded) {}

LaurentSeries LaurentSeries::zero(ContextPtr ctx) { return LaurentSeries(std::move(ctx)); }

LaurentSeries LaurentSeries::constant(ContextPtr ctx, const Rational& c) {
  LaurentSeries s(std::move(ctx));
  if (c == 0) return s;
  std::fill(s.lo_.begin(), s.lo_.end(), 0);
  s.terms_[Exponents(s.lo_.size(), 0)] = c;
  return s;
}

LaurentSeries LaurentSeries::monomial(ContextPtr ctx, const std::map<std::string, std::int64_t>& user_exps,
                                      const Rational& c) {
  LaurentSeries s(std::move(ctx));
  if (c == 0) return s;
  Exponents e(s.lo_.size(), 0);
  for (const auto& [name, exp] : user_exps) {
    std::size_t v = s.ctx_->index_of(name);
    e[v] = s.ctx_->to_internal(v, exp);
  }
  s.lo_ = e;
  s.terms_[e] = c;
  return s;
}

LaurentSeries LaurentSeries::variable(ContextPtr ctx, const std::string& name) {
  return monomial(std::move(ctx), {{name, 1}});
}

bool LaurentSeries::is_zero() const {
  return std::any_of(lo_.begin(), lo_.end(), [](std::int64_t l) { return l >= kUnbounded; });
}

Rational LaurentSeries::constant_value() const {
  if (is_zero()) return 0;
  for (std::size_t v = 0; v < lo_.size(); ++v) {
    if (lo_[v] < 0 || hi_[v] < kUnbounded) {
      throw WindowError("series is not certified constant in '" + ctx_->vars[v].name + "'");
    }
  }
  Rational value = 0;
  for (const auto& [e, c] : terms_) {
    if (std::any_of(e.begin(), e.end(), [](std::int64_t x) { return x != 0; })) {
      throw EvalError("series is not constant");
    }
    value = c;
  }
  return value;
}

Rational LaurentSeries::coeff_internal(const Exponents& e) const {
  if (is_zero()) return 0;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] < lo_[v]) return 0;
  }
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] > hi_[v]) {
      throw WindowError("coefficient outside window in '" + ctx_->vars[v].name + "'");
    }
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentSeries::coeff(const std::map<std::string, std::int64_t>& user_exps) const {
  Exponents e(lo_.size(), 0);
  for (const auto& [name, exp] : user_exps) {
    std::size_t v = ctx_->index_of(name);
    e[v] = ctx_->to_internal(v, exp);
  }
  return coeff_internal(e);
}

std::pair<std::int64_t, std::int64_t> LaurentSeries::user_window(const std::string& name) const {
  std::size_t v = ctx_->index_of(name);
  if (ctx_->vars[v].orientation == Orientation::Small) return {lo_[v], hi_[v]};
  auto neg = [](std::int64_t x) { return x >= kUnbounded ? -kUnbounded : -x; };
  return {neg(hi_[v]), neg(lo_[v])};
}

void LaurentSeries::check_same_context(const LaurentSeries& other) const {
  if (ctx_ != other.ctx_ && ctx_->vars.size() != other.ctx_->vars.size()) {
    throw EvalError("series from different variable sets");
  }
}

void LaurentSeries::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || !within(it->first, hi_)) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  if (is_zero()) {
    terms_.clear();
    std::fill(lo_.begin(), lo_.end(), kUnbounded);
    std::fill(hi_.begin(), hi_.end(), kUnbounded);
    return;
  }
  // A fully expanded series is known exactly, so its support is the true one.
  if (std::all_of(hi_.begin(), hi_.end(), [](std::int64_t h) { return h >= kUnbounded; })) {
    if (terms_.empty()) {
      std::fill(lo_.begin(), lo_.end(), kUnbounded);
      return;
    }
    for (std::size_t v = 0; v < lo_.size(); ++v) {
      std::int64_t m = kUnbounded;
      for (const auto& [e, c] : terms_) m = std::min(m, e[v]);
      lo_[v] = m;
    }
  }
}

LaurentSeries LaurentSeries::operator-() const { return scaled(-1); }

LaurentSeries LaurentSeries::scaled(const Rational& c) const {
  if (c == 0) return zero(ctx_);
  LaurentSeries out = *this;
  for (auto& [e, v] : out.terms_) v *= c;
  return out;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  a.check_same_context(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  LaurentSeries out(a.ctx_);
  for (std::size_t v = 0; v < a.lo_.size(); ++v) {
    out.lo_[v] = std::min(a.lo_[v], b.lo_[v]);
    out.hi_[v] = std::min(a.hi_[v], b.hi_[v]);
  }
  for (const auto& src : {&a.terms_, &b.terms_}) {
    for (const auto& [e, c] : *src) {
      if (within(e, out.hi_)) out.terms_[e] += c;
    }
  }
  out.normalize();
  return out;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  a.check_same_context(b);
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(a.ctx_);
  LaurentSeries out(a.ctx_);
  const std::size_t n = a.lo_.size();
  for (std::size_t v = 0; v < n; ++v) {
    out.lo_[v] = a.lo_[v] + b.lo_[v];
    out.hi_[v] = std::min(sat_add(a.hi_[v], b.lo_[v]), sat_add(b.hi_[v], a.lo_[v]));
  }
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      bool keep = true;
      for (std::size_t v = 0; v < n && keep; ++v) {
        e[v] = ea[v] + eb[v];
        keep = e[v] <= out.hi_[v];
      }
      if (keep) out.terms_[e] += ca * cb;
    }
  }
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::truncated(std::size_t v, std::int64_t hi) const {
  if (is_zero() || hi >= hi_[v]) return *this;
  LaurentSeries out = *this;
  out.hi_[v] = hi;
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::inverse() const {
  if (is_zero()) throw EvalError("division by zero series");
  const std::size_t n = lo_.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (hi_[v] < lo_[v]) {
      throw WindowError("leading coefficient unknown in '" + ctx_->vars[v].name + "'");
    }
  }
  auto lead_it = terms_.find(lo_);
  if (lead_it == terms_.end()) throw EvalError("cannot invert a non-unit series");
  const Rational lead = lead_it->second;

  bool exact = std::all_of(hi_.begin(), hi_.end(), [](std::int64_t h) { return h >= kUnbounded; });
  if (exact && terms_.size() == 1) {
    LaurentSeries out(ctx_);
    Exponents e(n);
    for (std::size_t v = 0; v < n; ++v) e[v] = -lo_[v];
    out.lo_ = e;
    out.terms_[e] = 1 / lead;
    return out;
  }

  // this = lead * X^lo * (1 + g) with g supported on exponents >= 0, g(0) = 0.
  // 1/(1+g) is exact up to hi - lo, and the shift by -lo may not exceed the cap.
  std::vector<std::int64_t> window(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t from_data = hi_[v] >= kUnbounded ? kUnbounded : hi_[v] - lo_[v];
    window[v] = std::min(from_data, ctx_->caps[v] + lo_[v]);
  }
  if (std::any_of(window.begin(), window.end(), [](std::int64_t w) { return w < 0; })) {
    throw WindowError("cap too small to invert series");
  }
  std::map<Exponents, Rational> g;
  for (const auto& [e, c] : terms_) {
    if (e == lo_) continue;
    Exponents d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = e[v] - lo_[v];
    if (within(d, window)) g[d] = -c / lead;
  }
  // Each power of g raises the total degree, so the loop ends once every
  // monomial leaves the (finite) window.
  std::map<Exponents, Rational> sum{{Exponents(n, 0), Rational(1)}};
  std::map<Exponents, Rational> power = sum;
  Exponents e(n);
  while (!power.empty()) {
    std::map<Exponents, Rational> next;
    for (const auto& [ep, cp] : power) {
      for (const auto& [eg, cg] : g) {
        bool keep = true;
        for (std::size_t v = 0; v < n && keep; ++v) {
          e[v] = ep[v] + eg[v];
          keep = e[v] <= window[v];
        }
        if (keep) next[e] += cp * cg;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    for (const auto& [en, cn] : next) sum[en] += cn;
    power = std::move(next);
  }
  LaurentSeries out(ctx_);
  for (std::size_t v = 0; v < n; ++v) {
    out.lo_[v] = -lo_[v];
    out.hi_[v] = window[v] >= kUnbounded ? kUnbounded : window[v] - lo_[v];
  }
  for (const auto& [es, cs] : sum) {
    Exponents shifted(n);
    for (std::size_t v = 0; v < n; ++v) shifted[v] = es[v] - lo_[v];
    out.terms_[shifted] = cs / lead;
  }
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::pow(const BigInt& e) const {
  if (e < 0) return inverse().pow(-e);
  if (e > BigInt(1'000'000)) throw EvalError("exponent too large");
  long long k = e.convert_to<long long>();
  LaurentSeries result = constant(ctx_, 1);
  LaurentSeries base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

LaurentSeries LaurentSeries::res(const std::string& name) const {
  const std::size_t v = ctx_->index_of(name);
  const std::int64_t r = ctx_->to_internal(v, -1);
  if (is_zero() || r < lo_[v]) return zero(ctx_);
  if (r > hi_[v]) {
    throw WindowError("residue in '" + name + "' needs an exponent outside the window");
  }
  LaurentSeries out(ctx_);
  out.lo_ = lo_;
  out.hi_ = hi_;
  out.lo_[v] = 0;
  out.hi_[v] = kUnbounded;
  for (const auto& [e, c] : terms_) {
    if (e[v] != r) continue;
    Exponents d = e;
    d[v] = 0;
    out.terms_[d] = c;
  }
  out.normalize();
  return out;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream out;
  out << "window";
  for (std::size_t v = 0; v < lo_.size(); ++v) {
    auto [l, h] = user_window(ctx_->vars[v].name);
    auto bound = [](std::int64_t b) {
      if (b >= kUnbounded) return std::string("inf");
      if (b <= -kUnbounded) return std::string("-inf");
      return std::to_string(b);
    };
    out << ' ' << ctx_->vars[v].name << "=[" << bound(l) << "," << bound(h) << "]";
  }
  out << '\n';
  for (const auto& [e, c] : terms_) {
    out << "  ";
    bool any = false;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      out << (any ? "*" : "") << ctx_->vars[v].name << "^" << ctx_->to_internal(v, e[v]);
      any = true;
    }
    if (!any) out << "1";
    out << " : " << c << '\n';
  }
  return out.str();
}

LaurentSeries geometric_collapse(const LaurentSeries& ratio) {
  const ContextPtr& ctx = ratio.context();
  const std::size_t n = ctx->vars.size();
  if (ratio.is_zero()) return LaurentSeries::constant(ctx, 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (ratio.lo(v) < 0) throw EvalError("divergent formal sum: ratio has negative valuation");
    if (ratio.hi(v) < 0) throw WindowError("constant term of ratio unknown");
  }
  if (ratio.coeff_internal(Exponents(n, 0)) != 0) {
    throw EvalError("divergent formal sum: ratio has valuation 0");
  }
  LaurentSeries r = ratio;
  for (std::size_t v = 0; v < n; ++v) r = r.truncated(v, ctx->caps[v]);
  // Every monomial of r has total degree >= 1, so r^k vanishes inside the
  // window once k exceeds the sum of the window widths.
  std::int64_t width = 0;
  for (std::size_t v = 0; v < n; ++v) width += r.hi(v);
  LaurentSeries sum = LaurentSeries::constant(ctx, 1);
  LaurentSeries power = sum;
  for (std::int64_t k = 1; k <= width; ++k) {
    power = power * r;
    for (std::size_t v = 0; v < n; ++v) power = power.truncated(v, r.hi(v));
    sum = sum + power;
  }
  for (std::size_t v = 0; v < n; ++v) sum = sum.truncated(v, r.hi(v));
  return sum;
}

LaurentSeries residue_eval_simple_pole(const LaurentSeries& g, const std::string& x, std::int64_t p,
                                       const LaurentSeries& s) {
  const ContextPtr& ctx = g.context();
  const std::size_t vx = ctx->index_of(x);
  if (ctx->vars[vx].orientation != Orientation::Large) {
    throw EvalError("simple pole evaluation needs '" + x + "' expanded at infinity");
  }
  for (const auto& [e, c] : s.terms()) {
    if (e[vx] != 0) throw EvalError("valuation violation: pole location depends on '" + x + "'");
  }
  if (!s.is_zero() && (s.lo(vx) < 0 || s.hi(vx) < kUnbounded)) {
    throw EvalError("valuation violation: pole location depends on '" + x + "'");
  }
  if (g.is_zero()) return LaurentSeries::zero(ctx);
  if (g.hi(vx) < kUnbounded) throw EvalError("valuation violation: g must be polynomial in '" + x + "'");
  for (const auto& [e, c] : g.terms()) {
    if (e[vx] > 0) throw EvalError("valuation violation: g has negative powers of '" + x + "'");
  }
  LaurentSeries result = LaurentSeries::zero(ctx);
  const std::int64_t degree = -g.lo(vx);
  for (std::int64_t j = 0; j <= degree; ++j) {
    // [x^j] g as a series in the remaining variables.
    LaurentSeries c = (g * LaurentSeries::monomial(ctx, {{x, -j - 1}})).res(x);
    if (c.is_zero()) continue;
    result = result + c * s.pow(BigInt(j + p));
  }
  return result;
}

}  // namespace binomid
