#include "hopper/errors.hpp"
#include "hopper/polytope.hpp"
#include "hopper/rational.hpp"

#include <gtest/gtest.h>

using namespace hopper;

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("-0.002"), Rational(-1, 500));
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("1.5e2"), Rational(150));
  EXPECT_EQ(parse_rational("007"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, FormatRoundTrips) {
  for (const char* s : {"0", "-3", "7/9", "-123456789012345678901234567890/11"}) {
    EXPECT_EQ(format_rational(parse_rational(s)), s);
  }
}

TEST(Rational, DoublesConvertExactly) {
  EXPECT_EQ(rational_from_double(0.375), Rational(3, 8));
  EXPECT_EQ(rational_from_double(-2.0), Rational(-2));
  EXPECT_DOUBLE_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
  EXPECT_EQ(snap_to_dyadic(0.3, 4), Rational(5, 16));
}

TEST(Rational, IntegerizeAndPrimitive) {
  RationalVector row{Rational(1, 2), Rational(1, 3), Rational(-1)};
  IntegerVector v = integerize(row);
  EXPECT_EQ(v, (IntegerVector{3, 2, -6}));
  IntegerVector w{4, -6, 8};
  make_primitive(w);
  EXPECT_EQ(w, (IntegerVector{2, -3, 4}));
}

TEST(PolytopeFormat, ParseAndWriteRoundTrip) {
  const Polytope p = parse_polytope("# comment\n3 2\n0 0\n1/2 0\n0 0.25\n");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.dimension(), 2u);
  EXPECT_EQ(p.at(2, 1), Rational(1, 4));
  EXPECT_EQ(parse_polytope(format_polytope(p)), p);
  EXPECT_THROW(parse_polytope("2 2\n0 0\n"), ParseError);
  EXPECT_THROW(parse_polytope("x"), ParseError);
}
