#pragma once

#include <cmath>
#include <vector>

#include "levywh/models.hpp"

namespace levywh {

struct InversionSpec {
  double sigma0 = NAN;         // Re q on the Bromwich line; NaN: 9.2 / t
  double omega_minus = NAN;    // Im xi of the inner contour apex; NaN: chosen from the strip
  double q_truncation = NAN;   // largest |Im q| used; NaN: 33 pi / t
  double xi_truncation = NAN;  // radius of the inner contour; NaN: chosen from x
  double tol = 1e-8;
};

struct InversionResult {
  double value;
  double error;
  int n_nodes;  // outer nodes times inner evaluations
  double sigma0;
  double omega_minus;
};

/// P[sup_{s <= t} X_s < x] from the inner integrand q e^{-ix xi} / (i xi phi_q^-(xi) (q + psi(xi))).
double survival_prob(const LevyModel& m, double t, double x, const InversionSpec& spec = {});
InversionResult survival_prob_detail(const LevyModel& m, double t, double x,
                                     const InversionSpec& spec = {});
/// Same as survival_prob for several x sharing the outer nodes.
std::vector<InversionResult> survival_grid(const LevyModel& m, double t,
                                           const std::vector<double>& xs,
                                           const InversionSpec& spec = {});

/// P[sup_{s <= t} X_s >= x] from the inner integrand e^{-ix xi} phi_q^+(xi) / (i xi).
double exceed_prob(const LevyModel& m, double t, double x, const InversionSpec& spec = {});
InversionResult exceed_prob_detail(const LevyModel& m, double t, double x,
                                   const InversionSpec& spec = {});

/// The exceedance double integral at x = 0; equals 1 when nu_+ > 0.
InversionResult unit_integral_check(const LevyModel& m, double t, const InversionSpec& spec = {});

}  // namespace levywh
