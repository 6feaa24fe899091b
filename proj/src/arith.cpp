#include "stoch/arith.hpp"

#include <cctype>
#include <string>

#include "stoch/errors.hpp"

namespace stoch {

BigInt factorial(unsigned n) {
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational: '" + std::string(text) + "'");
    const BigInt d(std::string(den), 10);
    if (d == 0) throw DomainError("zero denominator: '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw DomainError("malformed decimal: '" + std::string(text) + "'");
    }
    const std::string digits = std::string(whole) + std::string(frac);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value = Rational(BigInt(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(body)) throw DomainError("malformed rational: '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_str(10);
}

}  // namespace stoch
