#include "rpm/riccati.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace rpm {
namespace {

using test::big;
using test::epoly;
using test::make;

void expect_values(const CoeffSequence<BigReal>& c, const std::vector<Rational>& expected) {
  ASSERT_EQ(c.f.size(), expected.size());
  for (std::size_t j = 0; j < expected.size(); ++j) {
    EXPECT_LT(test::log10_rel(c.f[j], to_big(expected[j], 60)), -55) << "f_" << j;
    if (expected[j] == 0) {
      EXPECT_TRUE(c.f[j].is_zero()) << "f_" << j;
    }
  }
}

TEST(Numeric, HarmonicAtEigenvalue) {
  expect_values(coeffs_numeric(make(Model::harmonic), 0, big("1"), 3, 60), {1, 0, 0, 0});
}

TEST(Numeric, HarmonicAtThree) {
  expect_values(coeffs_numeric(make(Model::harmonic), 0, big("3"), 2, 60),
                {3, Rational(8, 3), Rational(16, 5)});
}

TEST(Numeric, QuarticAtTwo) {
  expect_values(coeffs_numeric(make(Model::quartic), 0, big("2"), 2, 60),
                {2, Rational(4, 3), Rational(13, 15)});
}

TEST(Numeric, RejectsShiftedPotentialAndLowPrecision) {
  const auto mpt = make(Model::mpt, {{"lambda", Rational(3)}}, 8);
  EXPECT_THROW(coeffs_numeric(mpt, 0, big("1"), 3, 60), InvalidInput);
  EXPECT_THROW(coeffs_numeric(make(Model::quartic), 0, big("1"), 3, 10), InvalidInput);
  EXPECT_THROW(coeffs_numeric(make(Model::quartic), 2, big("1"), 3, 40), InvalidInput);
}

TEST(Numeric, MissingCoefficientFailsLoudly) {
  const auto mpt = shift_constant(make(Model::mpt, {{"lambda", Rational(3)}}, 4)).first;
  EXPECT_NO_THROW(coeffs_numeric(mpt, 0, big("1"), 4, 40));
  EXPECT_THROW(coeffs_numeric(mpt, 0, big("1"), 5, 40), InvalidInput);
}

TEST(Dual, HarmonicTangents) {
  const auto c = coeffs_dual(make(Model::harmonic), 0, big("1"), std::nullopt, 3, 60);
  EXPECT_TRUE(c.f[1].value.is_zero());
  EXPECT_LT(test::log10_rel(c.f[1].dE, to_big(Rational(2, 3), 60)), -55);
  EXPECT_EQ(c.f[0].dE, 1);
  const auto c7 = coeffs_dual(make(Model::harmonic), 0, big("7.25"), std::nullopt, 2, 60);
  EXPECT_EQ(c7.f[0].dE, 1);
}

TEST(Dual, ParameterTangent) {
  const auto dw = make(Model::dwell, {{"beta", Rational(0)}}, 4);
  const auto c = coeffs_dual(dw, 0, big("1"), std::string("beta"), 2, 60);
  EXPECT_LT(test::log10_rel(c.f[1].dP, to_big(Rational(-1, 3), 60)), -55);
  EXPECT_TRUE(c.f[0].dP.is_zero());
}

TEST(Dual, ValuesMatchNumeric) {
  const auto v = make(Model::x2x4, {{"lambda", Rational(1, 3)}}, 40);
  const auto n = coeffs_numeric(v, 1, big("2.5"), 20, 60);
  const auto d = coeffs_dual(v, 1, big("2.5"), std::nullopt, 20, 60);
  for (std::size_t j = 0; j < n.f.size(); ++j) EXPECT_EQ(n.f[j], d.f[j].value) << j;
}

TEST(Dual, EnergyTangentMatchesFiniteDifference) {
  const unsigned P = 60;
  const BigReal h = to_big("1e-30", P);
  for (Model m : {Model::quartic, Model::harmonic}) {
    const auto v = make(m, {}, 30);
    for (int s : {0, 1}) {
      const BigReal E = big("1.37", P);
      const auto d = coeffs_dual(v, s, E, std::nullopt, 15, P);
      const auto up = coeffs_numeric(v, s, E + h, 15, P);
      const auto dn = coeffs_numeric(v, s, E - h, 15, P);
      for (std::size_t j = 1; j < d.f.size(); ++j) {
        const BigReal fd = (up.f[j] - dn.f[j]) / (h * 2);
        EXPECT_LT(test::log10_rel(fd, d.f[j].dE), 4.0 - P / 2.0) << "s=" << s << " j=" << j;
      }
    }
  }
}

TEST(Dual, ParameterTangentMatchesFiniteDifference) {
  const unsigned P = 60;
  const Rational beta(-5, 2);
  const auto v = make(Model::dwell, {{"beta", beta}}, 30);
  const Rational step(1, BigInt("1000000000000000000000000000000"));
  const auto vp = make(Model::dwell, {{"beta", beta + step}}, 30);
  const auto vm = make(Model::dwell, {{"beta", beta - step}}, 30);
  const BigReal E = big("0.8", P);
  const auto d = coeffs_dual(v, 0, E, std::string("beta"), 12, P);
  const auto up = coeffs_numeric(vp, 0, E, 12, P);
  const auto dn = coeffs_numeric(vm, 0, E, 12, P);
  const BigReal twice = to_big(step * 2, P);
  for (std::size_t j = 1; j < d.f.size(); ++j) {
    const BigReal fd = (up.f[j] - dn.f[j]) / twice;
    EXPECT_LT(test::log10_rel(fd, d.f[j].dP), 4.0 - P / 2.0) << j;
  }
}

TEST(Symbolic, HarmonicLowOrders) {
  const auto c = coeffs_symbolic(make(Model::harmonic), 0, 3);
  EXPECT_EQ(c.f[0], epoly({0, 1}));
  EXPECT_EQ(c.f[1], epoly({Rational(-1, 3), 0, Rational(1, 3)}));
  EXPECT_EQ(c.f[2], epoly({0, Rational(-2, 15), 0, Rational(2, 15)}));
  // (E^2 - 1)(17E^2 - 5)/315
  const RationalPoly e2m1 = epoly({-1, 0, 1});
  EXPECT_EQ(c.f[3], scale(e2m1 * epoly({-5, 0, 17}), Rational(1, 315)));
}

TEST(Symbolic, OddParityFirstCoefficient) {
  for (Model m : {Model::harmonic, Model::quartic}) {
    EXPECT_EQ(coeffs_symbolic(make(m), 1, 0).f[0], epoly({0, Rational(1, 3)}));
  }
}

TEST(Symbolic, QuarticSecondCoefficient) {
  const auto c = coeffs_symbolic(make(Model::quartic), 0, 2);
  EXPECT_EQ(c.f[2], epoly({Rational(-1, 5), 0, 0, Rational(2, 15)}));
}

TEST(Symbolic, DegreeLaw) {
  const std::vector<PotentialSpec> potentials = {
      make(Model::harmonic), make(Model::quartic), make(Model::x2x4, {{"lambda", Rational(1)}}),
      make(Model::dwell, {{"beta", Rational(-5)}})};
  for (const auto& v : potentials) {
    for (int s : {0, 1}) {
      const auto c = coeffs_symbolic(v, s, 25);
      for (int n = 0; n <= 25; ++n) {
        const auto& f = c.f[static_cast<std::size_t>(n)];
        ASSERT_EQ(f.degree(), n + 1) << v.name() << " s=" << s << " n=" << n;
        EXPECT_GT(f.leading()[0], 0) << v.name() << " s=" << s << " n=" << n;
      }
    }
  }
}

TEST(Symbolic, HarmonicCoefficientsCarryEnergyFactor) {
  const auto c = coeffs_symbolic(make(Model::harmonic), 0, 25);
  const RationalPoly e2m1 = epoly({-1, 0, 1});
  for (int j = 1; j <= 25; ++j) {
    const auto [q, r] = divmod(c.f[static_cast<std::size_t>(j)], e2m1);
    EXPECT_TRUE(r.is_zero()) << "j=" << j;
  }
}

TEST(Symbolic, AgreesWithNumericAtRandomRationals) {
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<int> num(-1000, 1000);
  const unsigned P = 50;
  const std::vector<PotentialSpec> potentials = {make(Model::quartic, {}, 20),
                                                 make(Model::x2x4, {{"lambda", Rational(2, 7)}}, 20),
                                                 make(Model::dwell, {{"beta", Rational(-5)}}, 20)};
  for (const auto& v : potentials) {
    for (int s : {0, 1}) {
      const auto sym = coeffs_symbolic(v, s, 15);
      for (int trial = 0; trial < 4; ++trial) {
        const Rational E(num(rng), 100);
        const auto n = coeffs_numeric(v, s, to_big(E, P), 15, P);
        for (std::size_t j = 0; j < n.f.size(); ++j) {
          const BigReal exact = evaluate(sym.f[j], to_big(E, P + 20), BigReal(0), P + 20);
          if (exact.is_zero()) continue;
          EXPECT_LT(test::log10_rel(n.f[j], exact), 2.0 - P) << v.name() << " j=" << j;
        }
      }
    }
  }
}

TEST(Symbolic, ParameterStaysSymbolic) {
  const auto v = test::symbolic(Model::dwell, "beta");
  const auto c = coeffs_symbolic(v, 0, 1);
  // f_1 = (E^2 - beta)/3
  const ParamPoly minus_beta_third(std::vector<Rational>{0, Rational(-1, 3)});
  const RationalPoly expected(std::vector<ParamPoly>{minus_beta_third, ParamPoly(), ParamPoly(Rational(1, 3))});
  EXPECT_EQ(c.f[1], expected);
}

TEST(Series, ExtendsIncrementally) {
  const auto v = make(Model::quartic, {}, 30);
  auto gen = numeric_series(v, 0, big("1.2"), 60);
  const auto& first = gen.extend(5);
  const BigReal f5 = first.f[5];
  const auto& more = gen.extend(12);
  EXPECT_EQ(more.f[5], f5);
  EXPECT_EQ(more.n_max(), 12);
  const auto direct = coeffs_numeric(v, 0, big("1.2"), 12, 60);
  for (std::size_t j = 0; j <= 12; ++j) EXPECT_EQ(direct.f[j], more.f[j]);
}

}  // namespace
}  // namespace rpm
