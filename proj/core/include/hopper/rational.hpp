#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hopper {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal literal (optionally with exponent)
/// into an exact rational. "-0.002" becomes -1/500.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

/// Exact binary value of a finite double.
Rational rational_from_double(double value);

double to_double(const Rational& value);

/// Multiplies the row by the positive lcm of its denominators.
IntegerVector integerize(std::span<const Rational> row);

/// Divides by the gcd of the entries; a zero vector is left untouched.
void make_primitive(IntegerVector& v);

/// Nearest multiple of 2^-bits.
Rational snap_to_dyadic(double value, int bits);

}  // namespace hopper
