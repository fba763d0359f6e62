#include "rpm/oracle.hpp"
#include "rpm/solver.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace rpm {
namespace {

using test::make;

TEST(Oracle, HarmonicLevels) {
  const auto r = oracle_eigenvalues(make(Model::harmonic), std::nullopt, 3);
  ASSERT_EQ(r.energies.size(), 4u);
  for (int n = 0; n < 4; ++n) {
    EXPECT_NEAR(r.energies[static_cast<std::size_t>(n)], 2 * n + 1, 1e-8);
    EXPECT_EQ(r.states[static_cast<std::size_t>(n)], n);
  }
  EXPECT_LT(r.max_drift, 1e-8);
  EXPECT_GT(r.box, 0);
  EXPECT_GT(r.step, 0);
}

TEST(Oracle, ParityFilter) {
  const auto even = oracle_eigenvalues(make(Model::harmonic), 0, 1);
  const auto odd = oracle_eigenvalues(make(Model::harmonic), 1, 1);
  EXPECT_NEAR(even.energies[0], 1, 1e-8);
  EXPECT_NEAR(even.energies[1], 5, 1e-8);
  EXPECT_NEAR(odd.energies[0], 3, 1e-8);
  EXPECT_NEAR(odd.energies[1], 7, 1e-8);
}

TEST(Oracle, QuarticLevels) {
  const auto r = oracle_eigenvalues(make(Model::quartic), std::nullopt, 2);
  EXPECT_NEAR(r.energies[0], 1.0603620904841829, 1e-8);
  EXPECT_NEAR(r.energies[1], 3.7996730298013941, 1e-8);
  EXPECT_NEAR(r.energies[2], 7.4556979379867383, 1e-8);
}

TEST(Oracle, ModifiedPoschlTeller) {
  const auto v = make(Model::mpt, {{"lambda", Rational(3)}}, 16);
  EXPECT_NEAR(oracle_eigenvalues(v, 0, 0).energies[0], -4, 1e-8);
  EXPECT_NEAR(oracle_eigenvalues(v, 1, 0).energies[0], -1, 1e-8);
}

TEST(Oracle, FullLineAgreesWithHalfLine) {
  for (const auto& v : {make(Model::quartic), make(Model::dwell, {{"beta", Rational(-5)}}),
                        make(Model::x2x4, {{"lambda", Rational(1, 10)}})}) {
    const auto half = oracle_eigenvalues(v, std::nullopt, 3);
    const auto full = oracle_full_line(v, 3);
    ASSERT_EQ(full.energies.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(full.energies[k], half.energies[k], 1e-7 * std::max(1.0, std::abs(half.energies[k])))
          << v.name() << " k=" << k;
    }
  }
}

TEST(Oracle, DoubleWellIsNearlyDegenerate) {
  const auto v = make(Model::dwell, {{"beta", Rational(-10)}});
  const auto r = oracle_eigenvalues(v, std::nullopt, 1);
  EXPECT_LT(r.energies[0], 0);
  EXPECT_LT(r.energies[1] - r.energies[0], 1e-3);
  EXPECT_GT(r.energies[1] - r.energies[0], 0);
}

TEST(Oracle, RefusesTruncatedSeries) {
  const PotentialSpec v("custom", {}, Rational(0), {Rational(1), Rational(1)}, false);
  EXPECT_THROW(real_potential(v), InvalidInput);
  EXPECT_THROW(oracle_eigenvalues(make(Model::harmonic), 2, 0), InvalidInput);
  EXPECT_THROW(oracle_eigenvalues(make(Model::harmonic), 0, -1), InvalidInput);
}

struct Case {
  const char* label;
  PotentialSpec v;
};

TEST(Oracle, AgreesWithHankelRoots) {
  const std::vector<Case> cases = {
      {"harmonic", make(Model::harmonic, {}, 30)},
      {"quartic", make(Model::quartic, {}, 30)},
      {"x2x4", make(Model::x2x4, {{"lambda", Rational(1)}}, 30)},
      {"dwell-1", make(Model::dwell, {{"beta", Rational(-1)}}, 30)},
      {"dwell-5", make(Model::dwell, {{"beta", Rational(-5)}}, 30)},
  };
  for (const auto& c : cases) {
    for (int s : {0, 1}) {
      const double e = oracle_eigenvalues(c.v, s, 0).energies[0];
      SolveOptions o;
      o.start_window = 0.05;
      const auto seq = track_sequence(c.v, s, 0, 2, 14, to_big(std::to_string(e), 40), o);
      ASSERT_FALSE(seq.entries.empty()) << c.label;
      const double rpm = seq.entries.back().root.to_double();
      EXPECT_NEAR(rpm, e, 1e-8 * std::max(1.0, std::abs(e))) << c.label << " s=" << s;
    }
  }
}

}  // namespace
}  // namespace rpm
