#include "nsbox/rational.hpp"

#include <cmath>
#include <limits>

#include "nsbox/errors.hpp"
#include "nsbox/random.hpp"

namespace nsbox {
namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
    throw ParseError("", "malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d(std::string(den.front() == '+' ? den.substr(1) : den));
  if (d == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string to_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string format_exact(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return to_string(value);
}

std::string format_decimal(const Rational& value, int significant_digits) {
  boost::multiprecision::mpf_float_100 f(value);
  return f.str(significant_digits);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational power(const Rational& base, unsigned exponent) {
  return Rational(pow(numerator(base), exponent), pow(denominator(base), exponent));
}

Rational limit_denominator(const Rational& value, const Integer& max_denominator) {
  if (max_denominator < 1) throw DomainError("max_denominator must be at least 1");
  if (denominator(value) <= max_denominator) return value;

  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = numerator(value), d = denominator(value);
  while (true) {
    Integer a = floor_div(n, d);
    Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
  }
  Integer k = floor_div(max_denominator - q0, q1);
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  return abs(bound2 - value) <= abs(bound1 - value) ? bound2 : bound1;
}

bool bernoulli(const Rational& p, Rng& rng) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  const Integer& den = denominator(p);
  if (den <= std::numeric_limits<std::uint64_t>::max()) {
    const auto d = den.convert_to<std::uint64_t>();
    const auto n = numerator(p).convert_to<std::uint64_t>();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % d;
    std::uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    return draw % d < n;
  }
  // Denominators beyond 64 bits only arise from chained renormalization.
  return std::generate_canonical<double, 64>(rng) < to_double(p);
}

}  // namespace nsbox
