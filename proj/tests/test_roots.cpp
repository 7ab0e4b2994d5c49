#include <gtest/gtest.h>

#include <cmath>

#include "catalog.hpp"
#include "levywh/roots.hpp"

using namespace levywh;

TEST(StripZeros, BrownianQuadratic) {
  const double s2 = 1.7, mu = 0.4, q = 0.8;
  auto z = find_strip_zeros(catalog::bm(s2, mu), q);
  ASSERT_EQ(z.zeros.size(), 2u);
  const double r = std::sqrt(mu * mu + 2 * s2 * q);
  EXPECT_NEAR(z.zeros[0].beta, (-mu - r) / s2, 1e-12);
  EXPECT_NEAR(z.zeros[1].beta, (-mu + r) / s2, 1e-12);
}

TEST(StripZeros, ZeroAtQZero) {
  auto z = find_strip_zeros(catalog::bm(1.0, -0.5), 0.0);
  ASSERT_EQ(z.zeros.size(), 2u);
  EXPECT_EQ(z.zeros[0].beta, 0.0);
  EXPECT_NEAR(z.zeros[1].beta, 1.0, 1e-12);
  auto z0 = find_strip_zeros(catalog::bm(1.0, 0.0), 0.0);
  ASSERT_EQ(z0.zeros.size(), 1u);
  EXPECT_EQ(z0.zeros[0].multiplicity, 2);
}

TEST(StripZeros, ResidualAndOnePerSideOnCatalog) {
  for (const auto& nm : catalog::sl_catalog()) {
    for (double q : {0.01, 0.5, 3.0, 40.0}) {
      auto z = find_strip_zeros(nm.model, q);
      int pos = 0, neg = 0;
      for (const auto& r : z.zeros) {
        (r.beta > 0 ? pos : neg)++;
        const double res = std::abs(q + psi(nm.model, cplx(0, -r.beta)));
        EXPECT_LT(res, 1e-10 * (1 + q)) << nm.name;
      }
      EXPECT_LE(pos, 1) << nm.name;
      EXPECT_LE(neg, 1) << nm.name;
    }
  }
}

TEST(StripZeros, ContinuityInQ) {
  for (const auto& nm : catalog::sl_catalog()) {
    for (double q : {0.05, 1.0, 7.0}) {
      auto a = find_strip_zeros(nm.model, q).zeros;
      auto b = find_strip_zeros(nm.model, q * 1.001).zeros;
      ASSERT_EQ(a.size(), b.size()) << nm.name;
      for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_LT(std::abs(b[i].beta / a[i].beta - 1), 5e-3) << nm.name;
    }
  }
}

TEST(AxisZeros, HejdBetweenPoles) {
  LevyModel m(Hejd{0.3, 0.1, {{1.0, 3.0}, {0.5, 6.0}}, {{1.0, 2.0}}});
  auto z = find_axis_zeros(m, 1.0);
  int lower = 0;
  for (const auto& r : z.zeros) lower += r.beta > 0;
  EXPECT_EQ(lower, 3);
  EXPECT_EQ(static_cast<int>(z.zeros.size()) - lower, 2);
}

TEST(BetaAsymptotic, Brownian) {
  auto b = beta_asymptotic(catalog::bm(1.0, 0.0), 0.01);
  EXPECT_NEAR(b.beta_plus.real(), std::sqrt(0.02), 1e-12);
  EXPECT_NEAR(b.beta_minus.real(), -std::sqrt(0.02), 1e-12);
  auto d = beta_asymptotic(catalog::bm(1.0, 1.0), 1e-4);
  EXPECT_NEAR(d.beta_plus.real(), -1 + std::sqrt(1 + 2e-4), 1e-15);
  EXPECT_NEAR(d.beta_minus.real(), -1 - std::sqrt(1 + 2e-4), 1e-12);
}

TEST(BetaAsymptotic, SmallQRates) {
  LevyModel pos(KoBoL{0.5, 0.5, 1.0, 1.0, -1.0, 3.0, 0.0});
  const double mu1 = pos.traits().mu1;
  ASSERT_GT(mu1, 0);
  auto b = beta_asymptotic(pos, 1e-4);
  EXPECT_LT(std::abs(b.beta_plus.real() * mu1 / 1e-4 - 1), 1e-2);
  auto nig = catalog::symmetric_nig();
  auto c = beta_asymptotic(nig, 1e-6);
  EXPECT_LT(std::abs(c.beta_plus.real() / std::sqrt(2e-6 / nig.traits().mu2) - 1), 1e-2);
  EXPECT_NEAR(c.beta_plus.real(), -c.beta_minus.real(), 1e-14);
}

TEST(BetaAsymptotic, AgreesWithScan) {
  for (const auto& nm : catalog::sl_catalog()) {
    const double q = 0.02;
    auto z = find_strip_zeros(nm.model, q).zeros;
    auto b = beta_asymptotic(nm.model, q);
    for (const auto& r : z) {
      const cplx mine = r.beta > 0 ? b.beta_plus : b.beta_minus;
      if (std::isnan(mine.real())) continue;
      EXPECT_LT(std::abs(mine - r.beta), 1e-10) << nm.name;
    }
  }
}

TEST(BetaAsymptotic, ComplexQResidual) {
  for (const auto& nm : catalog::sl_catalog()) {
    const cplx q(0.01, 0.02);
    auto b = beta_asymptotic(nm.model, q);
    for (cplx beta : {b.beta_plus, b.beta_minus}) {
      if (std::isnan(beta.real())) continue;
      EXPECT_LT(std::abs(q + psi(nm.model, cplx(0, -1) * beta)), 1e-10) << nm.name;
    }
  }
}

TEST(LevelCrossing, Brownian) {
  auto m = catalog::bm(1.0, 0.0);
  EXPECT_NEAR(axis_level_crossing(m, 2.0, 1), 2.0, 1e-12);
  EXPECT_NEAR(axis_level_crossing(m, 2.0, -1), 2.0, 1e-12);
  EXPECT_EQ(axis_level_crossing(m, 0.0, 1), 0.0);
}
