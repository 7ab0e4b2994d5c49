#pragma once

#include <cmath>
#include <vector>

#include "levywh/contour.hpp"
#include "levywh/models.hpp"

namespace levywh {

enum class Representation { Direct, Normalized, SLCut };

struct WHEval {
  cplx value;
  Representation representation;
  double contour_param;  // omega of the integration line (NaN for SLCut)
  double quad_error;     // absolute error estimate of the exponent
  cplx q;
  cplx xi;
};

struct WHOptions {
  double tol = 1e-11;
  double omega = NAN;  // override the automatically chosen line
};

/// Line Im eta = omega_- for phi_q^+ at points with Im xi >= im_xi_min.
double plus_factor_line(const LevyModel& m, cplx q, double im_xi_min);
/// Line Im eta = omega_+ for phi_q^- at points with Im xi <= im_xi_max.
double minus_factor_line(const LevyModel& m, cplx q, double im_xi_max);

/// phi_q^+(xi) = E exp(i xi sup_{s <= T_q} X_s), from the Cauchy-type integral of
/// psi'/(q+psi) over a line below the real axis.
WHEval phi_plus_direct(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});
WHEval phi_minus_direct(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});

/// Representations through ln Phi(q, eta), which tends to zero at infinity.
WHEval phi_plus_normalized(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});
WHEval phi_minus_normalized(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});

/// Product over the imaginary zeros times an integral over the bank of the cut.
WHEval phi_plus_sl(const LevyModel& m, double q, cplx xi, double tol = 1e-11);
WHEval phi_minus_sl(const LevyModel& m, double q, cplx xi, double tol = 1e-11);

/// phi_q^- with the factor of the zero -i beta_q^- removed (requires mu1 <= 0).
/// q = 0 is allowed.
WHEval phi_minus_0(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});
/// Closed form of phi_0^{-,0} for SL models through the upper cut.
WHEval phi_minus_0_sl(const LevyModel& m, cplx xi, double tol = 1e-11);

/// Coefficient of the leading term phi_q^+(xi) ~ phi_{q,inf}^+ (1 - i xi)^{-nu_+}.
cplx phi_q_infty_plus(const LevyModel& m, cplx q, double tol = 1e-12);
cplx phi_q_infty_minus(const LevyModel& m, cplx q, double tol = 1e-12);

/// Default dispatch: SLCut for SL models at real q > 0, Direct otherwise.
WHEval phi_plus(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});
WHEval phi_minus(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt = {});

/// phi_q^+ on a fixed line below all probes.
/// tilt < 0 bends the ends of the line downwards (see FactorLine).
FactorLine plus_factor_on_line(const LevyModel& m, cplx q, const std::vector<cplx>& probes,
                               double tol = 1e-12, double tilt = 0.0);
/// phi_q^- on a fixed line, discretised once for evaluation at many points.
/// `probes` should span the points of later use.
FactorLine minus_factor_on_line(const LevyModel& m, cplx q, const std::vector<cplx>& probes,
                                double tol = 1e-12, double tilt = 0.0);
/// phi_0^{-,0} discretised once (mu1 <= 0).
FactorLine minus0_factor_on_line(const LevyModel& m, const std::vector<cplx>& probes,
                                 double tol = 1e-12, double tilt = 0.0);

}  // namespace levywh
