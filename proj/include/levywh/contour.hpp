#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "levywh/models.hpp"
#include "levywh/quadrature.hpp"

namespace levywh {

using CFun = std::function<cplx(cplx)>;

/// ln(eta / (eta - xi)) on the branch that vanishes as |eta| -> inf along a
/// horizontal line that does not separate eta from eta - xi.
cplx log_ratio(cplx eta, cplx xi);

/// (1/(2 pi i)) \int_{Im eta = omega} g(eta) ln(eta/(eta - xi)) d eta, adaptive in a
/// sinh-mapped variable. Used for single evaluations.
QuadResult<cplx> line_log_integral(const CFun& g, double omega, cplx xi, double tol);

/// (1/(2 pi i)) \int_{Im eta = omega} h(eta) d eta for an integrand decaying faster than 1/eta.
QuadResult<cplx> line_integral(const CFun& h, double omega, double scale, double tol,
                               double extra_break = NAN);

/// The same line integral discretised once by a trapezoid rule in the sinh
/// variable, refined by step halving until a set of probe points converge.
/// Cheap to evaluate at many xi afterwards. A nonzero tilt bends the line into
/// eta = i omega + a (sinh(i tilt + u) - i sin tilt), whose ends leave at angle
/// tilt (up for tilt > 0); the step can then stay coarse for probes far out in
/// the opposite half-plane.
class FactorLine {
 public:
  FactorLine(const CFun& g, double omega, double sign, const std::vector<cplx>& probes,
             double tol, double tilt = 0.0);

  cplx log_value(cplx xi) const;
  cplx value(cplx xi) const { return std::exp(log_value(xi)); }
  double omega() const { return omega_; }
  double achieved_error() const { return error_; }
  std::size_t size() const { return eta_.size(); }

 private:
  double omega_;
  double error_ = 0.0;
  std::vector<cplx> eta_;
  std::vector<cplx> weight_;
};

/// Piecewise-linear contour made of two rays leaving i*omega at angle gamma
/// below (dir = -1) or above (dir = +1) the horizontal, oriented left to right.
struct Cone {
  double omega = 0.0;
  double gamma = 0.39269908169872414;  // pi/8
  int dir = -1;
  double r_max = 1e4;
  double scale = 1.0;  // length scale for the node map along the rays
};

cplx cone_point(const Cone& c, double r, bool right);

/// \int_cone f(xi) d xi.
QuadResult<cplx> cone_integral(const std::function<cplx(cplx)>& f, const Cone& c, double tol);

/// Number of zeros minus poles of f in the two wedges between the cone and the
/// horizontal line through its apex (truncated at r_max). Returns -1 if f
/// vanishes on the boundary or the argument could not be tracked.
int wedge_zero_count(const std::function<cplx(cplx)>& f, const Cone& c);

}  // namespace levywh
