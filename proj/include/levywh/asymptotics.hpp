#pragma once

#include <map>
#include <string>
#include <vector>

#include "levywh/models.hpp"

namespace levywh {

enum class Regime { LowerTail, DriftNeg, DriftPos, DriftZero };
enum class AsympForm { Generic, SLRefined };

struct AsympResult {
  Regime regime;
  double coefficient;
  double exponent;  // nu_+ for LowerTail, -1/2 for DriftZero, 0 for DriftNeg
  AsympForm form;
  std::map<std::string, std::vector<double>> diagnostics;
};

std::string_view regime_name(Regime r);
std::string_view form_name(AsympForm f);

/// kappa_k(t) in P[sup_{s<=t} X_s < x] ~ kappa_k(t) x^{nu_+} as x -> 0, from the
/// Laplace inversion of d^k/dq^k (phi_{q,inf}^+ / q).
AsympResult lower_tail_coeff(const LevyModel& m, double t, int k = 0);

/// kappa(t) x^{nu_+}; uses k = 0 and falls back to k = 1 if that inversion
/// does not settle.
double lower_tail_approx(const LevyModel& m, double t, double x);

/// Sign of the first moment mu1 (zero within 1e-12 (1 + mu2)).
Regime classify_regime(const LevyModel& m);

/// p_inf(x) = P[sup X >= x] for mu1 < 0, so that P[sup_{s<=t} X_s < x] -> 1 - p_inf(x).
AsympResult p_infinity(const LevyModel& m, double x, AsympForm form = AsympForm::Generic);

/// p_{inf,0}(x) for mu1 = 0: P[sup_{s<=t} X_s < x] ~ p_{inf,0}(x) t^{-1/2}.
AsympResult p_infinity_zero_drift(const LevyModel& m, double x,
                                  AsympForm form = AsympForm::Generic);

/// Least-squares slope of log P[sup_{s<=t} X_s < x] against log t (mu1 > 0).
double drift_pos_decay_check(const LevyModel& m, const std::vector<double>& t_list, double x);

}  // namespace levywh
