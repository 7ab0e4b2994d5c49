#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catalog.hpp"
#include "levywh/asymptotics.hpp"
#include "levywh/errors.hpp"
#include "levywh/inversion.hpp"

using namespace levywh;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Asymptotics, BrownianLowerTailCoefficient) {
  const auto m = catalog::bm(1.0, 0.0);
  const auto r = lower_tail_coeff(m, 1.0);
  EXPECT_EQ(r.regime, Regime::LowerTail);
  EXPECT_DOUBLE_EQ(r.exponent, 1.0);
  EXPECT_NEAR(r.coefficient, std::sqrt(2 / kPi), 1e-7);
  EXPECT_NEAR(lower_tail_coeff(m, 4.0).coefficient, r.coefficient / 2, 1e-7);
  EXPECT_NEAR(lower_tail_approx(m, 1.0, 1e-3), 7.9788456e-4, 1e-9);
  // sigma^2 = 2 is BM at doubled time
  EXPECT_NEAR(lower_tail_coeff(catalog::bm(2.0, 0.0), 1.0).coefficient,
              lower_tail_coeff(m, 2.0).coefficient, 1e-7);
}

TEST(Asymptotics, DerivativeFormAgrees) {
  const auto m = catalog::symmetric_nig();
  const auto k0 = lower_tail_coeff(m, 1.0, 0);
  const auto k1 = lower_tail_coeff(m, 1.0, 1);
  EXPECT_DOUBLE_EQ(k0.exponent, 0.5);
  EXPECT_LT(rel(k1.coefficient, k0.coefficient), 1e-4);
  const auto k2 = lower_tail_coeff(m, 1.0, 2);
  EXPECT_LT(rel(k2.coefficient, k0.coefficient), 1e-3);
}

TEST(Asymptotics, ExponentFollowsTraits) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    if (nm.model.traits().asym_case == AsymptoticCase::None) continue;
    const auto r = lower_tail_coeff(nm.model, 1.0);
    EXPECT_DOUBLE_EQ(r.exponent, nm.model.traits().nu_plus) << nm.name;
    EXPECT_GT(r.coefficient, 0.0) << nm.name;
  }
}

TEST(Asymptotics, LowerTailRatioTendsToOne) {
  const auto m = catalog::symmetric_nig();
  const std::vector<double> xs{1e-1, 1e-2, 1e-3};
  const auto p = survival_grid(m, 1.0, xs);
  double prev = INFINITY;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = std::abs(lower_tail_approx(m, 1.0, xs[i]) / p[i].value - 1);
    EXPECT_LT(d, prev) << xs[i];
    prev = d;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Asymptotics, ClassifyRegime) {
  EXPECT_EQ(classify_regime(catalog::bm(1.0, -0.5)), Regime::DriftNeg);
  EXPECT_EQ(classify_regime(catalog::bm(1.0, 0.0)), Regime::DriftZero);
  EXPECT_EQ(classify_regime(LevyModel(KoBoL{1.2, 1.2, 1.0, 1.0, -3.0, 3.0, 0.0})),
            Regime::DriftZero);
  EXPECT_EQ(classify_regime(LevyModel(KoBoL{0.5, 0.5, 1.0, 1.0, -1.0, 3.0, 0.0})),
            Regime::DriftPos);
}

TEST(Asymptotics, RegimeMismatchRaises) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    const Regime r = classify_regime(nm.model);
    if (r != Regime::DriftNeg) EXPECT_THROW(p_infinity(nm.model, 1.0), RegimeError) << nm.name;
    if (r != Regime::DriftZero)
      EXPECT_THROW(p_infinity_zero_drift(nm.model, 1.0), RegimeError) << nm.name;
    if (r != Regime::DriftPos)
      EXPECT_THROW(drift_pos_decay_check(nm.model, {10.0, 20.0}, 1.0), RegimeError) << nm.name;
  }
  EXPECT_THROW(drift_pos_decay_check(catalog::bm(1.0, 0.5), {10.0}, 1.0), DomainError);
}

TEST(Asymptotics, BrownianLongHorizon) {
  for (double s2 : {1.0, 2.5}) {
    const auto neg = catalog::bm(s2, -0.5);
    const auto zero = catalog::bm(s2, 0.0);
    for (double x : {0.5, 1.0, 2.0}) {
      for (auto f : {AsympForm::Generic, AsympForm::SLRefined}) {
        EXPECT_NEAR(p_infinity(neg, x, f).coefficient, std::exp(-x / s2), 1e-8);
        EXPECT_NEAR(p_infinity_zero_drift(zero, x, f).coefficient, x * std::sqrt(2 / (kPi * s2)),
                    1e-8);
      }
    }
  }
}

TEST(Asymptotics, FormsAgree) {
  std::vector<LevyModel> neg{catalog::kobol_with_mean(-0.3), catalog::acceptance_catalog()[1].model};
  for (const auto& m : neg)
    for (double x : {0.3, 1.0, 3.0}) {
      const double g = p_infinity(m, x).coefficient;
      EXPECT_LT(rel(p_infinity(m, x, AsympForm::SLRefined).coefficient, g), 1e-5) << x;
    }
  for (const auto& nm : catalog::sl_catalog()) {
    if (classify_regime(nm.model) != Regime::DriftZero) continue;
    for (double x : {0.3, 1.0, 3.0}) {
      const double g = p_infinity_zero_drift(nm.model, x).coefficient;
      const double s = p_infinity_zero_drift(nm.model, x, AsympForm::SLRefined).coefficient;
      EXPECT_LT(rel(s, g), 1e-5) << nm.name << " " << x;
    }
  }
}

TEST(Asymptotics, LimitSurvivalShape) {
  // 1 - p_inf(x) = P[sup X < x] increases from 0
  const auto m = catalog::kobol_with_mean(-0.3);
  double prev = 0.0;
  for (double x : {1e-4, 1e-2, 0.3, 1.0, 3.0}) {
    const double s = 1 - p_infinity(m, x).coefficient;
    EXPECT_GT(s, prev) << x;
    EXPECT_LT(s, 1.0);
    prev = s;
  }
  // power law with exponent nu_+ near the origin
  const double a = 1 - p_infinity(m, 1e-6).coefficient, b = 1 - p_infinity(m, 1e-8).coefficient;
  EXPECT_NEAR(std::log(a / b) / std::log(100.0), m.traits().nu_plus, 0.02);
}

TEST(Asymptotics, ZeroDriftSmallBarrier) {
  const auto m = catalog::symmetric_nig();
  double prev = 0.0;
  for (double x : {1e-3, 1e-2, 0.1, 1.0}) {
    const double p = p_infinity_zero_drift(m, x).coefficient;
    EXPECT_GT(p, prev);
    prev = p;
  }
  EXPECT_LT(p_infinity_zero_drift(m, 1e-6).coefficient, 1e-2);
}

TEST(Asymptotics, DriftNegativeLongHorizon) {
  const auto m = catalog::kobol_with_mean(-0.3);
  const double target = 1 - p_infinity(m, 1.0).coefficient;
  double prev = INFINITY;
  for (double t : {30.0, 100.0, 300.0}) {
    const double d = std::abs(survival_prob(m, t, 1.0) - target) * t;
    EXPECT_LT(d, prev) << t;
    prev = d;
  }
}

TEST(Asymptotics, ZeroDriftLongHorizon) {
  const auto m = catalog::symmetric_nig();
  const double p0 = p_infinity_zero_drift(m, 1.0).coefficient;
  double prev = INFINITY;
  for (double t : {100.0, 1000.0}) {
    const double d = std::abs(std::sqrt(t) * survival_prob(m, t, 1.0) - p0);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev / p0, 1e-3);
}

TEST(Asymptotics, DriftPositiveDecay) {
  EXPECT_LT(drift_pos_decay_check(catalog::bm(1.0, 0.5), {10.0, 30.0, 100.0}, 1.0), -2.0);
  EXPECT_LE(drift_pos_decay_check(catalog::kobol_with_mean(0.3), {10.0, 50.0}, 1.0), -0.9);
}

TEST(Asymptotics, Errors) {
  const auto m = catalog::bm(1.0, -0.5);
  EXPECT_THROW(lower_tail_coeff(m, 0.0), DomainError);
  EXPECT_THROW(lower_tail_coeff(m, 1.0, -1), DomainError);
  EXPECT_THROW(p_infinity(m, 0.0), DomainError);
  EXPECT_THROW(p_infinity(LevyModel(Meixner{1.0, 1.0, -0.5, 0.0}), 1.0, AsympForm::SLRefined),
               UnsupportedError);
}
