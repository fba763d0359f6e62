#include "rpm/numeric.hpp"

#include <gtest/gtest.h>

namespace rpm {
namespace {

TEST(Decimal, KeepsTrailingZeros) {
  EXPECT_EQ(to_decimal(to_big("-4", 40), 20), "-4.0000000000000000000");
  EXPECT_EQ(to_decimal(to_big("0.36", 40), 5), "0.36000");
}

TEST(Decimal, RoundsHalfToEven) {
  EXPECT_EQ(to_decimal(to_big("0.125", 40), 2), "0.12");
  EXPECT_EQ(to_decimal(to_big("0.375", 40), 2), "0.38");
  EXPECT_EQ(to_decimal(to_big("1.0603620904841828996177", 40), 20), "1.0603620904841828996");
}

TEST(Decimal, CarriesIntoNewDigit) {
  EXPECT_EQ(to_decimal(to_big("9.9996", 40), 4), "10.00");
  EXPECT_EQ(to_decimal(to_big("-0.0099999", 40), 3), "-0.0100");
}

TEST(Decimal, Scientific) {
  EXPECT_EQ(to_scientific(to_big("2.3745e-112", 40), 3), "2.37e-112");
  EXPECT_EQ(to_scientific(BigReal(0), 3), "0");
}

TEST(Rational, ParsesExactForms) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-15"), Rational(-15));
  EXPECT_EQ(parse_rational("-7/21"), Rational(-1, 3));
}

TEST(Rational, RejectsFloatsAndGarbage) {
  for (const char* bad : {"0.5", "1e3", "", "1/0", "abc", "1/2/3", "--1"}) {
    EXPECT_THROW(parse_rational(bad), InvalidInput) << bad;
  }
}

TEST(BigRealTest, DecimalStringRoundTrip) {
  const BigReal x = to_big("3.14159265358979323846264338327950288", 40);
  EXPECT_EQ(to_decimal(x, 30), "3.14159265358979323846264338328");
  EXPECT_THROW(to_big("3.1x", 40), InvalidInput);
}

TEST(BigRealTest, BinaryOpsUseLargerPrecision) {
  const BigReal a = to_big("1", 30);
  const BigReal b = to_big("3", 90);
  EXPECT_EQ((a / b).bits(), b.bits());
  EXPECT_EQ((b / a).bits(), b.bits());
}

TEST(BigRealTest, RationalConversionIsCorrectlyRounded) {
  const BigReal third = to_big(Rational(1, 3), 50);
  EXPECT_EQ(to_decimal(third, 45), "0." + std::string(45, '3'));
}

TEST(Precision, ScopeRestoresDefault) {
  const unsigned before = default_digits10();
  {
    PrecisionScope outer(100);
    EXPECT_EQ(default_digits10(), 100u);
    {
      PrecisionScope inner(60);
      EXPECT_EQ(default_digits10(), 60u);
      EXPECT_EQ(BigReal(1).bits(), digits_to_bits(60));
    }
    EXPECT_EQ(default_digits10(), 100u);
  }
  EXPECT_EQ(default_digits10(), before);
}

TEST(Precision, MinimumIsEnforced) {
  EXPECT_THROW(require_precision(19), InvalidInput);
  EXPECT_NO_THROW(require_precision(20));
}

TEST(Log10, OfZeroIsMinusInfinity) {
  EXPECT_TRUE(std::isinf(log10_abs(BigReal(0))));
  EXPECT_NEAR(log10_abs(to_big("-1000", 40)), 3.0, 1e-12);
}

}  // namespace
}  // namespace rpm
