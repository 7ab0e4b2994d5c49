#pragma once

#include <cstdint>
#include <vector>

#include "levywh/models.hpp"

namespace levywh {

struct McConfig {
  int n_steps = 10000;
  int n_paths = 100000;
  std::uint64_t seed = 20240917;
  int cdf_grid = 2048;  // target number of probability cells in the increment table
};

/// Distribution function of X_dt on a monotone grid; sampled by inverse CDF with
/// linear interpolation (mass outside the grid goes to the end nodes).
struct CdfTable {
  std::vector<double> value;
  std::vector<double> prob;
  double dt = 0.0;
  double mean = 0.0;  // mean of the sampled law
  double mean_shift = 0.0;  // applied to the values so that mean = mu1 dt
  double max_violation = 0.0;  // largest decrease of the raw inverted CDF
  int evaluations = 0;

  double sample(double u) const;
  /// P[X_dt <= y] by linear interpolation.
  double cdf(double y) const;

 private:
  friend CdfTable increment_cdf_table(const LevyModel&, double, int);
  std::vector<std::uint32_t> guide_;
};

/// Table covering quantiles [1e-11, 1 - 1e-11] of X_dt, from Fourier inversion of
/// e^{-dt psi} along contours bent into the half-plane where e^{-i xi y} decays.
CdfTable increment_cdf_table(const LevyModel& m, double dt, int cdf_grid = 2048);

struct McResult {
  double estimate;
  double std_err;
  double bias_allowance;  // expected upward bias of discrete monitoring
  double bias_order;      // n_steps^{-1/max(nu, 1)}: how the bias shrinks with n_steps
  int n_steps;
  int n_paths;
};

/// Fraction of random-walk paths (n_steps increments over [0, t]) whose
/// running maximum stays below x.
McResult simulate_sup(const LevyModel& m, double t, double x, const McConfig& cfg = {});
/// Same paths for several barriers.
std::vector<McResult> simulate_sup_grid(const LevyModel& m, double t,
                                        const std::vector<double>& xs, const McConfig& cfg = {});

/// Discrete-monitoring bias of Brownian motion with the model's variance:
/// the barrier shift 0.5826 sqrt(mu2 dt) times the peak density sqrt(2/(pi mu2 t)).
double bias_allowance(const LevyModel& m, double t, int n_steps);

/// Counter-based uniform on (0, 1) keyed by (seed, path, step).
double counter_uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

}  // namespace levywh
