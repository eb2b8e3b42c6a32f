#include "binomid/linexpr.hpp"

#include <tuple>

namespace binomid {

namespace {

std::int64_t mod2(std::int64_t v) { return ((v % 2) + 2) % 2; }

}  // namespace

LinExpr LinExpr::var(const std::string& name, std::int64_t coeff) {
  LinExpr e;
  e.set(name, coeff);
  return e;
}

void LinExpr::set(const std::string& name, std::int64_t c) {
  if (c == 0) {
    coeffs_.erase(name);
  } else {
    coeffs_[name] = c;
  }
}

std::int64_t LinExpr::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

std::set<std::string> LinExpr::vars() const {
  std::set<std::string> out;
  for (const auto& [name, c] : coeffs_) out.insert(name);
  return out;
}

BigInt LinExpr::eval(const ParamEnv& env) const {
  BigInt r = constant_;
  for (const auto& [name, c] : coeffs_) {
    auto it = env.find(name);
    if (it == env.end()) throw EvalError("unbound variable '" + name + "'");
    r += it->second * c;
  }
  return r;
}

LinExpr LinExpr::substitute(const std::map<std::string, LinExpr>& images, bool keep_unmapped) const {
  LinExpr out(constant_);
  for (const auto& [name, c] : coeffs_) {
    auto it = images.find(name);
    if (it != images.end()) {
      out += it->second * c;
    } else if (keep_unmapped) {
      out += LinExpr::var(name, c);
    } else {
      throw EvalError("unmapped variable '" + name + "'");
    }
  }
  return out;
}

LinExpr LinExpr::rename(const std::map<std::string, std::string>& names) const {
  LinExpr out(constant_);
  for (const auto& [name, c] : coeffs_) {
    auto it = names.find(name);
    out += LinExpr::var(it == names.end() ? name : it->second, c);
  }
  return out;
}

LinExpr LinExpr::parity() const {
  LinExpr out(mod2(constant_));
  for (const auto& [name, c] : coeffs_) out.set(name, mod2(c));
  return out;
}

bool LinExpr::is_even() const { return parity() == LinExpr(0); }

LinExpr LinExpr::operator-() const {
  LinExpr out = *this;
  out *= -1;
  return out;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant_ += o.constant_;
  for (const auto& [name, c] : o.coeffs_) set(name, coeff(name) + c);
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) { return *this += -o; }

LinExpr& LinExpr::operator*=(std::int64_t s) {
  if (s == 0) {
    constant_ = 0;
    coeffs_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [name, c] : coeffs_) c *= s;
  return *this;
}

std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b) {
  return std::tie(a.coeffs_, a.constant_) <=> std::tie(b.coeffs_, b.constant_);
}

std::string LinExpr::to_string() const {
  std::string out;
  for (const auto& [name, c] : coeffs_) {
    if (c < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    std::int64_t m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m) + "*";
    out += name;
  }
  if (constant_ != 0 || out.empty()) {
    if (constant_ < 0) {
      out += std::to_string(constant_);
    } else {
      if (!out.empty()) out += '+';
      out += std::to_string(constant_);
    }
  }
  return out;
}

}  // namespace binomid
