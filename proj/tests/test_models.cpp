#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catalog.hpp"
#include "levywh/models.hpp"

using namespace levywh;
using levywh::catalog::acceptance_catalog;

namespace {

const double kPi = std::numbers::pi;

std::vector<catalog::NamedModel> all_models() {
  auto v = acceptance_catalog();
  v.push_back({"merton", LevyModel(Merton{0.2, 1.0, -0.1, 0.3, 0.05})});
  v.push_back({"kobol_log1", LevyModel(KoBoL{1.0, 1.0, 1.0, 0.5, -2.0, 1.5, 0.1})});
  v.push_back({"kobol_log0", LevyModel(KoBoL{0.0, 0.0, 1.0, 2.0, -2.0, 1.5, 0.3})});
  v.push_back({"kobol_mixed", LevyModel(KoBoL{1.5, 0.3, 0.7, 1.0, -2.0, 1.0, 0.0})});
  v.push_back({"nts_0.6", LevyModel(NormalTemperedStable{1.0, 0.6, 2.0, 0.5, 0.2})});
  return v;
}

}  // namespace

TEST(Psi, BrownianClosedForm) {
  EXPECT_NEAR(std::abs(psi(catalog::bm(2.0, 0.0), 1.0) - 1.0), 0.0, 1e-15);
  auto m = catalog::bm(1.0, 0.5);
  EXPECT_NEAR(std::abs(psi_prime(m, 0.0) - cplx(0, -0.5)), 0.0, 1e-15);
}

TEST(Psi, VanishesAtZero) {
  for (const auto& nm : all_models())
    EXPECT_LT(std::abs(psi(nm.model, 0.0)), 1e-14) << nm.name;
}

TEST(Psi, KobolLeadingAsymptotics) {
  LevyModel m(KoBoL{0.5, 0.5, 1.0, 1.0, -1.0, 1.0, 0.0});
  const double rho = 1e6;
  const cplx r = psi(m, rho) / std::sqrt(rho);
  EXPECT_NEAR(r.real(), 2 * std::sqrt(2 * kPi), 1e-2);
  EXPECT_NEAR(r.imag(), 0.0, 1e-9);
}

TEST(Psi, CgmyAsymptoticsAtTenThousand) {
  const double nu = 1.2, c = 1.0;
  LevyModel m(KoBoL{nu, nu, c, c, -3.0, 3.0, 0.0});
  const double cinf = -2 * c * std::tgamma(-nu) * std::cos(nu * kPi / 2);
  const double rho = 1e4;
  EXPECT_LT(std::abs(psi(m, rho) / (cinf * std::pow(rho, nu)) - 1.0), 1e-2);
  EXPECT_NEAR(m.traits().c_inf, cinf, 1e-12);
}

TEST(Psi, HermitianSymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30, 30);
  for (const auto& nm : all_models()) {
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      const cplx a = psi(nm.model, -x), b = std::conj(psi(nm.model, x));
      EXPECT_LT(std::abs(a - b), 1e-12 * (1 + std::abs(b))) << nm.name << " x=" << x;
    }
  }
}

TEST(Psi, NonnegativeRealPartOnRealLine) {
  for (const auto& nm : all_models())
    for (double x = -50; x <= 50; x += 0.37)
      EXPECT_GE(psi(nm.model, x).real(), -1e-13) << nm.name << " x=" << x;
}

TEST(Psi, RealOnImaginaryAxisInsideStrip) {
  for (const auto& nm : all_models()) {
    const auto& t = nm.model.traits();
    const double lo = std::max(t.strip_lo, -5.0), hi = std::min(t.strip_hi, 5.0);
    for (int k = 1; k < 40; ++k) {
      const double y = lo + (hi - lo) * k / 40.0;
      EXPECT_LT(std::abs(psi(nm.model, cplx(0, y)).imag()), 1e-12) << nm.name << " y=" << y;
    }
  }
}

TEST(Psi, DerivativeMatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  for (const auto& nm : all_models()) {
    const auto& t = nm.model.traits();
    const double lo = std::max(t.strip_lo, -4.0), hi = std::min(t.strip_hi, 4.0);
    std::uniform_real_distribution<double> ux(-10, 10), uy(lo * 0.9, hi * 0.9);
    for (int i = 0; i < 20; ++i) {
      const cplx xi(ux(rng), uy(rng));
      const double h = 1e-6 * (1 + std::abs(xi));
      const cplx fd = (psi(nm.model, xi + h) - psi(nm.model, xi - h)) / (2 * h);
      const cplx d = psi_prime(nm.model, xi);
      EXPECT_LT(std::abs(fd - d), 1e-6 * std::max(1.0, std::abs(d))) << nm.name;
    }
  }
}

TEST(Psi, SecondMomentMatchesFiniteDifferences) {
  for (const auto& nm : all_models()) {
    const double h = 1e-4;
    const cplx fd = (psi(nm.model, h) - 2.0 * psi(nm.model, 0.0) + psi(nm.model, -h)) / (h * h);
    EXPECT_NEAR(fd.real(), psi_second_at_zero(nm.model), 1e-5 * (1 + fd.real())) << nm.name;
    EXPECT_GT(psi_second_at_zero(nm.model), 0.0) << nm.name;
    const cplx mu1 = cplx(0, 1) * psi_prime(nm.model, 0.0);
    EXPECT_NEAR(mu1.real(), nm.model.traits().mu1, 1e-12) << nm.name;
    EXPECT_LT(std::abs(mu1.imag()), 1e-12) << nm.name;
  }
}

TEST(Psi, DomainErrorOnCut) {
  LevyModel m(KoBoL{0.5, 0.5, 1.0, 1.0, -1.0, 1.0, 0.0});
  EXPECT_THROW(psi(m, cplx(0, -2)), DomainError);
  EXPECT_NO_THROW(psi(m, cplx(1e-9, -2)));
  LevyModel h(Hejd{0.0, 0.0, {{1.0, 3.0}}, {{1.0, 2.0}}});
  EXPECT_THROW(psi(h, cplx(0, -3)), DomainError);
}

TEST(PsiCut, KobolLowerCut) {
  LevyModel m(KoBoL{0.5, 0.5, 1.0, 1.0, -1.0, 1.0, 0.0});
  EXPECT_NEAR(psi_cut(m, CutSide::Lower, Bank::Minus, 2.0).imag(), 2 * std::sqrt(kPi), 1e-12);
  EXPECT_THROW(psi_cut(m, CutSide::Lower, Bank::Minus, 0.5), DomainError);
}

TEST(PsiCut, NtsUpperCut) {
  LevyModel m(NormalTemperedStable{1.0, 1.0, 2.0, 0.0, 0.0});
  EXPECT_NEAR(psi_cut(m, CutSide::Upper, Bank::Plus, 3.0).imag(), std::sqrt(5.0), 1e-12);
}

TEST(PsiCut, MatchesOffAxisLimit) {
  for (const auto& nm : all_models()) {
    const auto& t = nm.model.traits();
    if (nm.model.family() == Family::HEJD) continue;
    for (double extra : {0.3, 1.7, 6.0}) {
      if (std::isfinite(t.strip_lo)) {
        const double w = -t.strip_lo + extra;
        for (Bank b : {Bank::Plus, Bank::Minus}) {
          const double eps = (b == Bank::Plus ? 1e-9 : -1e-9);
          const cplx lim = psi(nm.model, cplx(eps, -w));
          EXPECT_LT(std::abs(psi_cut(nm.model, CutSide::Lower, b, w) - lim), 1e-6) << nm.name;
        }
      }
      if (std::isfinite(t.strip_hi)) {
        const double w = t.strip_hi + extra;
        for (Bank b : {Bank::Plus, Bank::Minus}) {
          const double eps = (b == Bank::Plus ? 1e-9 : -1e-9);
          const cplx lim = psi(nm.model, cplx(eps, w));
          EXPECT_LT(std::abs(psi_cut(nm.model, CutSide::Upper, b, w) - lim), 1e-6) << nm.name;
        }
      }
    }
  }
}

TEST(PsiCut, BankConjugacy) {
  for (const auto& nm : all_models()) {
    const auto& t = nm.model.traits();
    if (!std::isfinite(t.strip_lo)) continue;
    for (double w = -t.strip_lo + 0.05; w < -t.strip_lo + 20; w += 0.77) {
      const cplx p = psi_cut(nm.model, CutSide::Lower, Bank::Plus, w);
      const cplx q = psi_cut(nm.model, CutSide::Lower, Bank::Minus, w);
      if (!std::isfinite(std::abs(p))) continue;
      EXPECT_LT(std::abs(p - std::conj(q)), 1e-10 * (1 + std::abs(p))) << nm.name;
    }
  }
}

// The analytic continuation of ln cosh through the right half-plane yields a
// staircase on the cut: Im psi(i w + 0) = 2 delta pi k for a w - b in ((2k-1)pi, (2k+1)pi).
TEST(PsiCut, MeixnerStaircase) {
  LevyModel m(Meixner{1.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(psi_cut(m, CutSide::Upper, Bank::Plus, 1.5 * kPi).imag(), 2 * kPi, 1e-10);
  EXPECT_NEAR(psi_cut(m, CutSide::Upper, Bank::Plus, 4.0 * kPi).imag(), 4 * kPi, 1e-10);
  EXPECT_NEAR(psi_cut(m, CutSide::Lower, Bank::Minus, 1.5 * kPi).imag(), 2 * kPi, 1e-10);
}

TEST(Traits, Brownian) {
  const auto& t = catalog::bm(1.0, -0.3).traits();
  EXPECT_DOUBLE_EQ(t.mu1, -0.3);
  EXPECT_DOUBLE_EQ(t.mu2, 1.0);
  EXPECT_DOUBLE_EQ(t.nu_plus, 1.0);
  EXPECT_DOUBLE_EQ(t.nu_minus, 1.0);
}

TEST(Traits, SymmetricKobol) {
  const auto& t = LevyModel(KoBoL{1.2, 1.2, 1.0, 1.0, -3.0, 3.0, 0.0}).traits();
  EXPECT_NEAR(t.phi_inf, 0.0, 1e-15);
  EXPECT_NEAR(t.nu_plus, 0.6, 1e-15);
  EXPECT_NEAR(t.nu_minus, 0.6, 1e-15);
}

// Positive jumps are tempered at rate 2 and negative jumps at rate 1, so the mean is negative.
TEST(Traits, AsymmetricKobolMean) {
  const auto& t = LevyModel(KoBoL{0.5, 0.5, 1.0, 1.0, -2.0, 1.0, 0.0}).traits();
  const double expected = -std::tgamma(-0.5) * 0.5 * (std::pow(2.0, -0.5) - 1.0);
  EXPECT_NEAR(t.mu1, expected, 1e-12);
  EXPECT_NEAR(t.mu1, -0.5190, 1e-3);
}

TEST(Traits, StripsAndOrders) {
  for (const auto& nm : all_models()) {
    const auto& t = nm.model.traits();
    EXPECT_LT(t.strip_lo, 0.0) << nm.name;
    EXPECT_GT(t.strip_hi, 0.0) << nm.name;
    EXPECT_GE(t.nu_plus, 0.0);
    EXPECT_LE(t.nu_plus, 1.0);
    if (t.asym_case == AsymptoticCase::A)
      EXPECT_NEAR(t.nu_plus + t.nu_minus, t.nu, 1e-14) << nm.name;
    if (t.asym_case == AsymptoticCase::B || t.asym_case == AsymptoticCase::C)
      EXPECT_DOUBLE_EQ(t.nu_plus + t.nu_minus, 1.0) << nm.name;
  }
  EXPECT_EQ(LevyModel(Meixner{}).traits().sl_kind, SLKind::sSL);
}

TEST(Model, ValidationNamesField) {
  try {
    LevyModel m(VarianceGamma{1.0, 1.0, 2.0, 0.0});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.field(), "beta");
  }
  EXPECT_THROW(LevyModel(KoBoL{0.5, 0.5, 1.0, 1.0, 1.0, 1.0, 0.0}), ParameterError);
}
