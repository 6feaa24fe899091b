#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stoch {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned n);
/// C(n, k); zero when k < 0 or k > n (including negative n).
BigInt binomial(long n, long k);

/// Parses "3", "-3/4" or a decimal such as "0.125"; the result is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const BigInt& value);
/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

}  // namespace stoch
