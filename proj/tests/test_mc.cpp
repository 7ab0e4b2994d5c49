#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "catalog.hpp"
#include "levywh/errors.hpp"
#include "levywh/inversion.hpp"
#include "levywh/mc.hpp"

using namespace levywh;

TEST(IncrementTable, BrownianMatchesNormal) {
  const auto tab = increment_cdf_table(catalog::bm(1.0, 0.0), 1.0);
  double worst = 0.0;
  for (double y = -4.0; y <= 4.0; y += 0.01)
    worst = std::max(worst, std::abs(tab.cdf(y) - 0.5 * std::erfc(-y / std::sqrt(2.0))));
  EXPECT_LT(worst, 1e-6);
}

TEST(IncrementTable, MonotoneAndCoversTails) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    const auto tab = increment_cdf_table(nm.model, 1e-3, 512);
    for (std::size_t j = 1; j < tab.value.size(); ++j) {
      ASSERT_LT(tab.value[j - 1], tab.value[j]) << nm.name;
      ASSERT_LE(tab.prob[j - 1], tab.prob[j]) << nm.name;
    }
    EXPECT_LE(tab.prob.front(), 1e-6) << nm.name;
    EXPECT_GE(tab.prob.back(), 1 - 1e-6) << nm.name;
    EXPECT_LT(tab.max_violation, 1e-6) << nm.name;
  }
}

TEST(IncrementTable, SymmetricMedianIsZero) {
  for (const auto& m : {catalog::symmetric_nig(), catalog::bm(2.0, 0.0)}) {
    const auto tab = increment_cdf_table(m, 0.01);
    EXPECT_LT(std::abs(tab.sample(0.5)), 1e-6);
    EXPECT_NEAR(tab.cdf(0.0), 0.5, 1e-6);
  }
}

TEST(IncrementTable, MeanMatchesFirstMoment) {
  for (const auto& nm : catalog::acceptance_catalog()) {
    const double dt = 0.01;
    const auto tab = increment_cdf_table(nm.model, dt, 1024);
    EXPECT_NEAR(tab.mean, nm.model.traits().mu1 * dt, 1e-4) << nm.name;
    // the correction only absorbs interpolation error, it is tiny
    EXPECT_LT(std::abs(tab.mean_shift), 1e-5) << nm.name;
  }
}

TEST(CounterRng, OpenUnitIntervalAndKeyed) {
  double lo = 1, hi = 0, sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = counter_uniform(7, i / 100, i % 100);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 4e-3);
  EXPECT_EQ(counter_uniform(1, 2, 3), counter_uniform(1, 2, 3));
  EXPECT_NE(counter_uniform(1, 2, 3), counter_uniform(1, 3, 2));
  EXPECT_NE(counter_uniform(1, 2, 3), counter_uniform(2, 2, 3));
}

TEST(SimulateSup, BrownianReflection) {
  McConfig cfg;
  cfg.n_steps = 1000;
  cfg.n_paths = 40000;
  const auto r = simulate_sup(catalog::bm(1.0, 0.0), 1.0, 1.0, cfg);
  const double exact = std::erf(1.0 / std::sqrt(2.0));
  EXPECT_GT(r.estimate - exact, -3 * r.std_err);
  EXPECT_LT(r.estimate - exact, 3 * r.std_err + r.bias_allowance);
  EXPECT_NEAR(r.std_err, std::sqrt(r.estimate * (1 - r.estimate) / cfg.n_paths), 1e-15);
}

TEST(SimulateSup, HugeBarrier) {
  McConfig cfg;
  cfg.n_steps = 100;
  cfg.n_paths = 10000;
  EXPECT_EQ(simulate_sup(catalog::symmetric_nig(), 1.0, 1e6, cfg).estimate, 1.0);
}

TEST(SimulateSup, ReproducibleAcrossThreadCounts) {
  McConfig cfg;
  cfg.n_steps = 200;
  cfg.n_paths = 20000;
  const auto m = catalog::symmetric_nig();
  setenv("LEVYWH_THREADS", "1", 1);
  const auto a = simulate_sup_grid(m, 1.0, {0.3, 1.0}, cfg);
  setenv("LEVYWH_THREADS", "3", 1);
  const auto b = simulate_sup_grid(m, 1.0, {0.3, 1.0}, cfg);
  unsetenv("LEVYWH_THREADS");
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a[i].estimate, b[i].estimate);
    EXPECT_EQ(a[i].std_err, b[i].std_err);
  }
  cfg.seed += 1;
  EXPECT_NE(simulate_sup(m, 1.0, 0.3, cfg).estimate, a[0].estimate);
}

TEST(SimulateSup, BiasShrinksWithSteps) {
  const auto m = catalog::bm(1.0, 0.0);
  const double exact = std::erf(1.0 / std::sqrt(2.0));
  double prev = INFINITY;
  for (int n : {100, 400, 1600}) {
    McConfig cfg;
    cfg.n_steps = n;
    cfg.n_paths = 100000;
    const auto r = simulate_sup(m, 1.0, 1.0, cfg);
    const double gap = r.estimate - exact;
    EXPECT_GT(gap, 0.0) << n;
    EXPECT_LT(gap, prev) << n;
    prev = gap;
  }
}

TEST(SimulateSup, CoverageAgainstInversion) {
  McConfig cfg;
  cfg.n_steps = 1000;
  cfg.n_paths = 20000;
  for (const auto& m : {catalog::symmetric_nig(), catalog::bm(1.0, -0.2)})
    for (double t : {1.0, 10.0}) {
      const auto rs = simulate_sup_grid(m, t, {0.5, 2.0}, cfg);
      for (int i = 0; i < 2; ++i) {
        const double x = i ? 2.0 : 0.5;
        const double p = survival_prob(m, t, x);
        EXPECT_LT(std::abs(rs[i].estimate - p), 3 * rs[i].std_err + rs[i].bias_allowance)
            << "t=" << t << " x=" << x;
      }
    }
}

TEST(SimulateSup, Errors) {
  const auto m = catalog::bm(1.0, 0.0);
  McConfig cfg;
  cfg.n_steps = 50;
  EXPECT_THROW(simulate_sup(m, 1.0, 1.0, cfg), ParameterError);
  cfg.n_steps = 100;
  cfg.n_paths = 100;
  EXPECT_THROW(simulate_sup(m, 1.0, 1.0, cfg), ParameterError);
  EXPECT_THROW(increment_cdf_table(m, 0.0), DomainError);
  EXPECT_THROW(simulate_sup(m, -1.0, 1.0), DomainError);
}
