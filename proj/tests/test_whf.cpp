#include <gtest/gtest.h>

#include <cmath>

#include "catalog.hpp"
#include "levywh/errors.hpp"
#include "levywh/roots.hpp"
#include "levywh/whf.hpp"

using namespace levywh;

namespace {
const cplx I(0.0, 1.0);
}

TEST(WHFactors, BrownianClosedForm) {
  const auto m = catalog::bm(1.0, 0.0);
  const double expect = std::sqrt(2.0) / (1.0 + std::sqrt(2.0));
  EXPECT_NEAR(std::abs(phi_plus_direct(m, 1.0, I).value - expect), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(phi_plus_sl(m, 1.0, I).value - expect), 0.0, 1e-10);
  for (double x : {-3.0, 0.5, 7.0}) {
    const cplx ex = std::sqrt(2.0) / (std::sqrt(2.0) - I * x);
    EXPECT_LT(std::abs(phi_plus_direct(m, 1.0, x).value - ex), 1e-10) << x;
    EXPECT_LT(std::abs(phi_minus_direct(m, 1.0, x).value - std::conj(ex)), 1e-10) << x;
  }
}

TEST(WHFactors, IdentityAcrossCatalog) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    for (double q : {0.1, 1.0, 10.0}) {
      double worst = 0.0;
      for (int k = 0; k < 50; ++k) {
        const double x = -20.0 + 40.0 * k / 49.0;
        const cplx lhs = q / (q + psi(nm.model, x));
        const cplx rhs = phi_plus_direct(nm.model, q, x).value *
                         phi_minus_direct(nm.model, q, x).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      EXPECT_LT(worst, 1e-7) << nm.name << " q=" << q;
    }
  }
}

TEST(WHFactors, ModulusAtMostOne) {
  for (const auto& nm : catalog::acceptance_catalog())
    for (double x : {-10.0, -1.0, 0.3, 4.0}) {
      EXPECT_LE(std::abs(phi_plus(nm.model, 0.5, x).value), 1.0 + 1e-9) << nm.name;
      EXPECT_LE(std::abs(phi_minus(nm.model, 0.5, x).value), 1.0 + 1e-9) << nm.name;
    }
}

TEST(WHFactors, ContourIndependence) {
  const auto m = LevyModel(KoBoL{1.2, 1.2, 1.0, 1.0, -3.0, 3.0, 0.0});
  const cplx a = phi_plus_direct(m, 1.0, 2.0, {1e-11, -0.3}).value;
  const cplx b = phi_plus_direct(m, 1.0, 2.0, {1e-11, -1.2}).value;
  EXPECT_LT(std::abs(a - b), 1e-9);
}

TEST(WHFactors, RepresentationsAgree) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    const auto& m = nm.model;
    for (double x : {-5.0, 0.7, 3.0}) {
      const cplx d = phi_plus_direct(m, 1.0, x).value;
      if (m.traits().asym_case != AsymptoticCase::None)
        EXPECT_LT(std::abs(phi_plus_normalized(m, 1.0, x).value - d), 1e-8) << nm.name;
      if (m.traits().sl_kind == SLKind::SL)
        EXPECT_LT(std::abs(phi_plus_sl(m, 1.0, x).value - d), 1e-8) << nm.name;
      const cplx dm = phi_minus_direct(m, 1.0, x).value;
      if (m.traits().asym_case != AsymptoticCase::None)
        EXPECT_LT(std::abs(phi_minus_normalized(m, 1.0, x).value - dm), 1e-8) << nm.name;
      if (m.traits().sl_kind == SLKind::SL)
        EXPECT_LT(std::abs(phi_minus_sl(m, 1.0, x).value - dm), 1e-8) << nm.name;
    }
  }
}

TEST(WHFactors, ComplexSpectralParameter) {
  const auto m = catalog::symmetric_nig();
  const cplx q(1.0, 2.0);
  for (double x : {-4.0, 1.5}) {
    const cplx lhs = q / (q + psi(m, x));
    const cplx rhs = phi_plus_direct(m, q, x).value * phi_minus_direct(m, q, x).value;
    EXPECT_LT(std::abs(lhs - rhs), 1e-8);
    EXPECT_LT(std::abs(phi_plus_normalized(m, q, x).value - phi_plus_direct(m, q, x).value),
              1e-8);
  }
}

TEST(WHFactors, LeadingCoefficientBrownian) {
  // sigma^2 = 2, q = 4: phi^+ = 2/(2 - i xi), so the coefficient of (-i xi)^{-1} is sqrt(q)
  const auto m = catalog::bm(2.0, 0.0);
  EXPECT_LT(std::abs(phi_q_infty_plus(m, 4.0) - 2.0), 1e-9);
  EXPECT_LT(std::abs(phi_q_infty_minus(m, 4.0) - 2.0), 1e-9);
}

TEST(WHFactors, LeadingCoefficientMatchesLargeXi) {
  const auto m = LevyModel(NormalTemperedStable{1.0, 1.0, 2.0, 0.0, 0.3});
  const auto& t = m.traits();
  const cplx c = phi_q_infty_plus(m, 1.0);
  for (double x : {2000.0, 5000.0}) {
    const cplx approx = c * std::pow(-I * x, -t.nu_plus);
    const cplx exact = phi_plus_direct(m, 1.0, x).value;
    EXPECT_LT(std::abs(exact / approx - 1.0), 2e-2) << x;
  }
}

TEST(WHFactors, MinusZeroBrownianIsOne) {
  const auto m = catalog::bm(1.0, 0.0);
  for (double x : {-3.0, 0.4, 6.0})
    EXPECT_LT(std::abs(phi_minus_0(m, 0.0, x).value - 1.0), 1e-10);
}

TEST(WHFactors, MinusZeroRepresentationsAgree) {
  for (const auto& nm : catalog::sl_catalog()) {
    if (nm.model.traits().mu1 > 0) continue;
    for (double x : {-2.0, 1.0, 5.0}) {
      const cplx a = phi_minus_0(nm.model, 0.0, x).value;
      const cplx b = phi_minus_0_sl(nm.model, x).value;
      EXPECT_LT(std::abs(a - b), 1e-8) << nm.name << " " << x;
    }
  }
}

TEST(WHFactors, MinusZeroFactorisation) {
  const auto m = LevyModel(VarianceGamma{1.0, 3.0, -0.5, 0.0});
  const double q = 0.3;
  const auto zs = find_axis_zeros(m, q).zeros;
  double bm = -INFINITY;
  for (const auto& z : zs)
    if (z.beta < 0) bm = std::max(bm, z.beta);
  ASSERT_TRUE(std::isfinite(bm));
  for (double x : {-2.0, 1.0}) {
    const cplx full = phi_minus_direct(m, q, x).value;
    const cplx reduced = phi_minus_0(m, q, x).value;
    const cplx lead = -bm / (-bm + I * x);
    EXPECT_LT(std::abs(full - reduced * lead), 1e-6) << x;
  }
}

TEST(WHFactors, FactorLineMatchesPointwise) {
  const auto m = catalog::symmetric_nig();
  std::vector<cplx> probes{cplx(-10, -1), cplx(10, -1), cplx(0, -3)};
  const FactorLine fl = minus_factor_on_line(m, 1.0, probes);
  for (cplx x : {cplx(0.5, -1.0), cplx(-3.0, -2.0)})
    EXPECT_LT(std::abs(fl.value(x) - phi_minus_direct(m, 1.0, x).value), 1e-9);
}

TEST(WHFactors, Errors) {
  const auto m = catalog::symmetric_nig();
  EXPECT_THROW(phi_plus_direct(m, -1.0, 1.0), DomainError);
  EXPECT_THROW(phi_plus_sl(LevyModel(Meixner{1, 1, 0.5, 0}), 1.0, 1.0), UnsupportedError);
  EXPECT_THROW(phi_minus_0(LevyModel(NormalTemperedStable{1, 1, 2, 0, 0.5}), 0.0, 1.0),
               RegimeError);
}
