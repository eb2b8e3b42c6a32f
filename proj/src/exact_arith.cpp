#include "binomid/exact_arith.hpp"

#include <limits>

namespace binomid {

namespace {

// Upper limit on the lower index; larger values would not terminate in
// reasonable time and only arise from malformed inputs.
constexpr std::int64_t kMaxLowerIndex = 1'000'000;

}  // namespace

BigInt exact_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("exact_div: division by zero");
  BigInt q;
  BigInt r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) {
    throw ArithmeticError("exact_div: " + num.str() + " is not divisible by " + den.str());
  }
  return q;
}

BigInt falling_factorial(const BigInt& n, std::int64_t k) {
  if (k < 0) throw ArithmeticError("falling_factorial: negative length " + std::to_string(k));
  BigInt r = 1;
  for (std::int64_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
  if (k < 0) return 0;
  if (k > kMaxLowerIndex) {
    if (n >= 0 && n < k) return 0;
    if (n >= 0 && n - k <= kMaxLowerIndex) return binomial(n, n - k);
    throw ArithmeticError("binomial: lower index " + k.str() + " too large");
  }
  std::int64_t kk = k.convert_to<std::int64_t>();
  if (n >= 0) {
    if (n < k) return 0;
    // C(n,k) = C(n,n-k) for n >= 0; use the shorter product.
    BigInt other = n - k;
    if (other < kk) kk = other.convert_to<std::int64_t>();
  }
  // After step i the accumulator holds C(n, i+1), so every division is exact.
  BigInt r = 1;
  for (std::int64_t i = 0; i < kk; ++i) {
    r *= n - i;
    r = exact_div(r, BigInt(i + 1));
  }
  return r;
}

BigInt binomial(std::int64_t n, std::int64_t k) { return binomial(BigInt(n), BigInt(k)); }

int sign_power(const BigInt& e) {
  return boost::multiprecision::bit_test(boost::multiprecision::abs(e), 0) ? -1 : 1;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw ArithmeticError("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::int64_t>();
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace binomid
