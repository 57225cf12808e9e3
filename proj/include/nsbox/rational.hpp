#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace nsbox {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "num/den" or a bare integer "num". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical serialized form, always "num/den" in lowest terms.
std::string to_string(const Rational& value);

/// "3/4" for proper fractions, "1" for integers.
std::string format_exact(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string format_decimal(const Rational& value, int significant_digits = 10);

double to_double(const Rational& value);

Rational power(const Rational& base, unsigned exponent);

/// Closest rational with denominator at most `max_denominator`.
Rational limit_denominator(const Rational& value, const Integer& max_denominator);

}  // namespace nsbox
