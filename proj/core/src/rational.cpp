#include "hopper/rational.hpp"

#include "hopper/errors.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace hopper {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("invalid number: '" + std::string(whole) + "'");
  const auto nonzero = s.find_first_not_of('0');
  Integer v{nonzero == std::string_view::npos ? std::string("0") : std::string(s.substr(nonzero))};
  return negative ? Integer(-v) : v;
}

Integer power_of_ten(unsigned exponent) {
  Integer r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!all_digits(den_text)) throw ParseError("invalid denominator: '" + std::string(whole) + "'");
    const auto nz = den_text.find_first_not_of('0');
    Integer den{nz == std::string_view::npos ? std::string("0") : std::string(den_text.substr(nz))};
    if (den == 0) throw ParseError("zero denominator: '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  bool negative = false;
  if (text.front() == '-' || text.front() == '+') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Integer ex = parse_integer(text.substr(e + 1), whole);
    if (abs(ex) > 100000) throw ParseError("exponent out of range: '" + std::string(whole) + "'");
    exponent = ex.convert_to<long>();
    text = text.substr(0, e);
  }
  std::string digits;
  std::size_t fraction_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw ParseError("invalid decimal: '" + std::string(whole) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    fraction_digits = fp.size();
  } else {
    if (!all_digits(text)) throw ParseError("invalid number: '" + std::string(whole) + "'");
    digits = std::string(text);
  }
  const auto nonzero = digits.find_first_not_of('0');
  digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
  Integer mantissa(digits);
  if (negative) mantissa = -mantissa;
  long scale = static_cast<long>(fraction_digits) - exponent;
  if (scale >= 0) return Rational(mantissa, power_of_ten(static_cast<unsigned>(scale)));
  return Rational(Integer(mantissa * power_of_ten(static_cast<unsigned>(-scale))));
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DegenerateInput("non-finite coordinate");
  return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

IntegerVector integerize(std::span<const Rational> row) {
  Integer scale = 1;
  for (const auto& x : row) {
    const Integer& den = denominator(x);
    if (den != 1) scale = boost::multiprecision::lcm(scale, den);
  }
  IntegerVector out;
  out.reserve(row.size());
  for (const auto& x : row) out.push_back(numerator(x) * (scale / denominator(x)));
  return out;
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (x != 0) {
      g = g == 0 ? Integer(abs(x)) : Integer(boost::multiprecision::gcd(g, x));
      if (g == 1) return;
    }
  }
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

Rational snap_to_dyadic(double value, int bits) {
  if (!std::isfinite(value)) throw DegenerateInput("non-finite coordinate");
  const double scaled = std::nearbyint(std::ldexp(value, bits));
  Integer num(scaled);
  Integer den = 1;
  den <<= bits;
  return Rational(num, den);
}

}  // namespace hopper
