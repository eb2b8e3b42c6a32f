#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "binomid/exact_arith.hpp"

namespace binomid {

/// Assignment of integer values to parameter (and bound-variable) names.
using ParamEnv = std::map<std::string, BigInt>;

/// Affine integer expression `c + sum_i a_i * v_i`.
///
/// Zero coefficients are never stored and the variable map is ordered by
/// name, so two LinExprs denote the same affine function iff they compare
/// equal.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(std::int64_t constant) : constant_(constant) {}  // NOLINT: implicit by design of the DSL
  static LinExpr var(const std::string& name, std::int64_t coeff = 1);

  std::int64_t constant() const { return constant_; }
  const std::map<std::string, std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t coeff(const std::string& name) const;
  bool is_constant() const { return coeffs_.empty(); }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }
  std::set<std::string> vars() const;

  BigInt eval(const ParamEnv& env) const;

  /// Simultaneous substitution. Variables without an image are kept when
  /// `keep_unmapped`, otherwise they raise EvalError.
  LinExpr substitute(const std::map<std::string, LinExpr>& images, bool keep_unmapped = true) const;
  LinExpr rename(const std::map<std::string, std::string>& names) const;

  /// Representative of the parity class: coefficients and constant in {0,1}.
  LinExpr parity() const;
  bool is_even() const;

  LinExpr operator-() const;
  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(std::int64_t s);
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, std::int64_t s) { return a *= s; }
  friend LinExpr operator*(std::int64_t s, LinExpr a) { return a *= s; }

  friend bool operator==(const LinExpr&, const LinExpr&) = default;
  friend std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b);

  /// Canonical text: variables in name order, then the constant, e.g.
  /// `a+b-c-d`, `-k-1`, `2*k+3`, `0`.
  std::string to_string() const;

 private:
  void set(const std::string& name, std::int64_t c);

  std::int64_t constant_ = 0;
  std::map<std::string, std::int64_t> coeffs_;
};

}  // namespace binomid
