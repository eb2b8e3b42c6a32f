#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "binomid/error.hpp"

namespace binomid {

using BigInt = boost::multiprecision::cpp_int;

/// Quotient of an exact division. Throws ArithmeticError on a nonzero
/// remainder or a zero divisor.
BigInt exact_div(const BigInt& num, const BigInt& den);

/// n(n-1)...(n-k+1); 1 for k = 0. Rejects k < 0.
BigInt falling_factorial(const BigInt& n, std::int64_t k);

/// Generalized binomial coefficient: 0 for k < 0, otherwise
/// falling_factorial(n, k) / k! for any integer n.
BigInt binomial(const BigInt& n, const BigInt& k);
BigInt binomial(std::int64_t n, std::int64_t k);

/// (-1)^e for any integer e.
int sign_power(const BigInt& e);

/// Narrowing conversion with a range check.
std::int64_t to_int64(const BigInt& v);

std::string to_string(const BigInt& v);

}  // namespace binomid
