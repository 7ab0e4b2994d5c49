#include "levywh/whf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levywh/roots.hpp"
#include "model_eval.hpp"

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLineCap = 50.0;
const cplx I(0.0, 1.0);

detail::PsiPair ev(const LevyModel& m, cplx xi) { return detail::psi_eval(m, xi, 0); }

void check(const QuadResult<cplx>& r, const char* what) {
  if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge", r.error);
}

double lower_reach(const LevyModel& m, cplx q) {
  return std::min(axis_level_crossing(m, q.real(), -1), kLineCap);
}
double upper_reach(const LevyModel& m, cplx q) {
  return std::min(axis_level_crossing(m, q.real(), +1), kLineCap);
}

double plus_line(double lo, double im_xi_min) {
  const double top = std::min(0.0, im_xi_min);
  if (!(lo < 0) || !(top > lo))
    throw ContourError("no admissible line below xi: increase Re q or move xi up");
  return 0.5 * (lo + top);
}

double minus_line(double hi, double im_xi_max) {
  const double bottom = std::max(0.0, im_xi_max);
  if (!(hi > 0) || !(bottom < hi))
    throw ContourError("no admissible line above xi: increase Re q or move xi down");
  return 0.5 * (hi + bottom);
}

// Normalisation data for ln Phi(q, eta) -> 0 at infinity.
struct Norm {
  AsymptoticCase cs;
  double Q;
  double nup, num;
  double c;
  double mu;
};

Norm make_norm(const LevyModel& m, cplx q) {
  const auto& t = m.traits();
  Norm n{t.asym_case, 0.0, t.nu_plus, t.nu_minus, t.c_inf, m.drift()};
  switch (t.asym_case) {
    case AsymptoticCase::A:
      n.Q = std::pow(std::abs(q) / t.c_inf, 1.0 / t.nu);
      break;
    case AsymptoticCase::B:
    case AsymptoticCase::C:
      n.Q = std::abs(q);
      break;
    default:
      throw UnsupportedError("normalized representation needs Case (a), (b) or (c) asymptotics");
  }
  return n;
}

cplx ln_phi(const LevyModel& m, const Norm& n, cplx q, cplx eta) {
  const cplx lq = std::log(q + ev(m, eta).value);
  if (n.cs == AsymptoticCase::A) {
    cplx v = std::log(n.c) - lq;
    if (n.nup != 0) v += n.nup * std::log(n.Q - I * eta);
    if (n.num != 0) v += n.num * std::log(n.Q + I * eta);
    return v;
  }
  return std::log(n.Q - I * n.mu * eta) - lq;
}

// the principal logs in ln Phi stay continuous only while these hold
double norm_lower_bound(const Norm& n) {
  if (n.cs == AsymptoticCase::A) return -n.Q;
  if (n.cs == AsymptoticCase::B) return -n.Q / n.mu;
  return -std::numeric_limits<double>::infinity();
}
double norm_upper_bound(const Norm& n) {
  if (n.cs == AsymptoticCase::A) return n.Q;
  if (n.cs == AsymptoticCase::C) return n.Q / -n.mu;
  return std::numeric_limits<double>::infinity();
}

double upper_end(const LevyModel& m) {
  if (m.family() == Family::HEJD) {
    const auto p = axis_poles(m);
    return p.upper.empty() ? kLineCap : p.upper.front();
  }
  return std::min(m.traits().strip_hi, kLineCap);
}

void require_nonpositive_drift(const LevyModel& m) {
  const auto& t = m.traits();
  if (t.mu1 > 1e-12 * (1 + t.mu2)) throw RegimeError("requires mu1 <= 0");
}

void require_sl(const LevyModel& m) {
  if (m.traits().sl_kind != SLKind::SL)
    throw UnsupportedError("SL representation unavailable: zeros may lie off the imaginary axis");
}


// (1/pi) \int_{s0}^inf log_ratio(z, a) d theta(z) with theta = arg(q + psi) along
// the bank, integrated by parts: theta is continuous on the cut of an SL model
// and, unlike its derivative, stays accurate near the branch point.
QuadResult<cplx> cut_integral(const std::function<cplx(double)>& qpsi, double s0, cplx a,
                              double tol) {
  const cplx v0 = qpsi(s0);
  double th0 = std::arg(v0);
  if (!std::isfinite(std::abs(v0)) || (v0.imag() == 0 && v0.real() < 0))
    th0 = std::copysign(kPi, std::arg(qpsi(s0 + 1e-6 * (1 + s0))));
  const double vmin = std::log(1e-15 * (1 + s0));
  const double vmax = std::log(1e17 * (1 + std::abs(a)));
  auto f = [&](double v) -> cplx {
    const double e = std::exp(v);
    const double z = s0 + e;
    if (!(z > s0)) return 0.0;
    return a / (z * (z - a)) * (std::arg(qpsi(z)) - th0) * e / kPi;
  };
  std::vector<double> breaks;
  for (double v = vmin; v < vmax; v += 3.0) breaks.push_back(v);
  breaks.push_back(vmax);
  return integrate_panels<cplx>(f, breaks, tol, 0.0, 6000);
}

}  // namespace

double plus_factor_line(const LevyModel& m, cplx q, double im_xi_min) {
  return plus_line(-lower_reach(m, q), im_xi_min);
}

double minus_factor_line(const LevyModel& m, cplx q, double im_xi_max) {
  return minus_line(upper_reach(m, q), im_xi_max);
}

WHEval phi_plus_direct(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (!(q.real() > 0)) throw DomainError("phi_plus_direct: Re q must be > 0");
  const double w = std::isnan(opt.omega) ? plus_factor_line(m, q, xi.imag()) : opt.omega;
  if (!(w < std::min(0.0, xi.imag()))) throw ContourError("line must lie below xi and 0");
  if (xi == 0.0) return {1.0, Representation::Direct, w, 0.0, q, xi};
  auto g = [&](cplx eta) {
    const auto p = ev(m, eta);
    return -p.deriv / (q + p.value);
  };
  const auto r = line_log_integral(g, w, xi, opt.tol);
  check(r, "phi_plus_direct");
  return {std::exp(r.value), Representation::Direct, w, r.error, q, xi};
}

WHEval phi_minus_direct(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (!(q.real() > 0)) throw DomainError("phi_minus_direct: Re q must be > 0");
  const double w = std::isnan(opt.omega) ? minus_factor_line(m, q, xi.imag()) : opt.omega;
  if (!(w > std::max(0.0, xi.imag()))) throw ContourError("line must lie above xi and 0");
  if (xi == 0.0) return {1.0, Representation::Direct, w, 0.0, q, xi};
  auto g = [&](cplx eta) {
    const auto p = ev(m, eta);
    return p.deriv / (q + p.value);
  };
  const auto r = line_log_integral(g, w, xi, opt.tol);
  check(r, "phi_minus_direct");
  return {std::exp(r.value), Representation::Direct, w, r.error, q, xi};
}

WHEval phi_plus_normalized(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (!(q.real() > 0)) throw DomainError("phi_plus_normalized: Re q must be > 0");
  const Norm n = make_norm(m, q);
  const double lo = std::max(-lower_reach(m, q), norm_lower_bound(n));
  const double w = std::isnan(opt.omega) ? plus_line(lo, xi.imag()) : opt.omega;
  if (xi == 0.0) return {1.0, Representation::Normalized, w, 0.0, q, xi};
  auto h = [&](cplx eta) { return ln_phi(m, n, q, eta) * xi / (eta * (eta - xi)); };
  const auto r = line_integral(h, w, std::abs(w), opt.tol, xi.real());
  check(r, "phi_plus_normalized");
  cplx pre = 1.0;
  if (n.cs == AsymptoticCase::A && n.nup != 0) pre = std::pow(n.Q / (n.Q - I * xi), n.nup);
  if (n.cs == AsymptoticCase::B) pre = n.Q / (n.Q - I * n.mu * xi);
  return {pre * std::exp(r.value), Representation::Normalized, w, r.error, q, xi};
}

WHEval phi_minus_normalized(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (!(q.real() > 0)) throw DomainError("phi_minus_normalized: Re q must be > 0");
  const Norm n = make_norm(m, q);
  const double hi = std::min(upper_reach(m, q), norm_upper_bound(n));
  const double w = std::isnan(opt.omega) ? minus_line(hi, xi.imag()) : opt.omega;
  if (xi == 0.0) return {1.0, Representation::Normalized, w, 0.0, q, xi};
  auto h = [&](cplx eta) { return -ln_phi(m, n, q, eta) * xi / (eta * (eta - xi)); };
  const auto r = line_integral(h, w, std::abs(w), opt.tol, xi.real());
  check(r, "phi_minus_normalized");
  cplx pre = 1.0;
  if (n.cs == AsymptoticCase::A && n.num != 0) pre = std::pow(n.Q / (n.Q + I * xi), n.num);
  if (n.cs == AsymptoticCase::C) pre = n.Q / (n.Q - I * n.mu * xi);
  return {pre * std::exp(r.value), Representation::Normalized, w, r.error, q, xi};
}

cplx phi_q_infty_plus(const LevyModel& m, cplx q, double tol) {
  if (!(q.real() > 0)) throw DomainError("phi_q_infty_plus: Re q must be > 0");
  const Norm n = make_norm(m, q);
  const double w = plus_line(std::max(-lower_reach(m, q), norm_lower_bound(n)), 0.0);
  auto h = [&](cplx eta) { return ln_phi(m, n, q, eta) / eta; };
  const auto r = line_integral(h, w, std::abs(w), tol);
  check(r, "phi_q_infty_plus");
  const cplx e = std::exp(-r.value);
  if (n.cs == AsymptoticCase::A) return std::pow(n.Q, n.nup) * e;
  if (n.cs == AsymptoticCase::B) return n.Q / n.mu * e;
  return e;
}

cplx phi_q_infty_minus(const LevyModel& m, cplx q, double tol) {
  if (!(q.real() > 0)) throw DomainError("phi_q_infty_minus: Re q must be > 0");
  const Norm n = make_norm(m, q);
  const double w = minus_line(std::min(upper_reach(m, q), norm_upper_bound(n)), 0.0);
  auto h = [&](cplx eta) { return -ln_phi(m, n, q, eta) / eta; };
  const auto r = line_integral(h, w, std::abs(w), tol);
  check(r, "phi_q_infty_minus");
  const cplx e = std::exp(-r.value);
  if (n.cs == AsymptoticCase::A) return std::pow(n.Q, n.num) * e;
  if (n.cs == AsymptoticCase::C) return n.Q / -n.mu * e;
  return e;
}

WHEval phi_plus_sl(const LevyModel& m, double q, cplx xi, double tol) {
  require_sl(m);
  if (!(q > 0)) throw DomainError("phi_plus_sl: q must be real and > 0");
  cplx prod = 1.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& z : find_axis_zeros(m, q).zeros) {
    if (z.beta <= 0) continue;
    if (z.multiplicity > 1) throw UnsupportedError("phi_plus_sl: multiple zero");
    prod *= z.beta / (z.beta - I * xi);
    smallest = std::min(smallest, z.beta);
  }
  if (!(xi.imag() > -smallest)) throw DomainError("phi_plus_sl: xi below the analyticity half-plane");
  double err = 0.0;
  if (m.family() == Family::HEJD) {
    for (double a : axis_poles(m).lower) prod *= (a - I * xi) / a;
  } else if (std::isfinite(m.traits().strip_lo) && xi != 0.0) {
    auto qpsi = [&](double z) { return q + detail::psi_eval(m, cplx(0, -z), -1).value; };
    const auto r = cut_integral(qpsi, -m.traits().strip_lo, I * xi, tol);
    check(r, "phi_plus_sl");
    prod *= std::exp(r.value);
    err = r.error;
  }
  return {prod, Representation::SLCut, NAN, err, q, xi};
}

WHEval phi_minus_sl(const LevyModel& m, double q, cplx xi, double tol) {
  require_sl(m);
  if (!(q > 0)) throw DomainError("phi_minus_sl: q must be real and > 0");
  cplx prod = 1.0;
  for (const auto& z : find_axis_zeros(m, q).zeros) {
    if (z.beta >= 0) continue;
    if (z.multiplicity > 1) throw UnsupportedError("phi_minus_sl: multiple zero");
    prod *= -z.beta / (-z.beta + I * xi);
  }
  double err = 0.0;
  if (m.family() == Family::HEJD) {
    for (double a : axis_poles(m).upper) prod *= (a + I * xi) / a;
  } else if (std::isfinite(m.traits().strip_hi) && xi != 0.0) {
    auto qpsi = [&](double z) { return q + detail::psi_eval(m, cplx(0, z), +1).value; };
    const auto r = cut_integral(qpsi, m.traits().strip_hi, -I * xi, tol);
    check(r, "phi_minus_sl");
    prod *= std::exp(r.value);
    err = r.error;
  }
  return {prod, Representation::SLCut, NAN, err, q, xi};
}

WHEval phi_minus_0(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  require_nonpositive_drift(m);
  const cplx beta = q == 0.0 ? cplx(0.0) : beta_asymptotic(m, q).beta_minus;
  if (std::isnan(beta.real())) throw ConvergenceError("beta_q^- not found", NAN);
  double w = std::isnan(opt.omega) ? 0.5 * std::min(upper_end(m), 1.0) : opt.omega;
  if (!(w > 0) || !(w > xi.imag()) || !(w < upper_end(m)))
    throw ContourError("phi_minus_0: line must lie above 0 and xi, inside the strip");
  if (xi == 0.0) return {1.0, Representation::Direct, w, 0.0, q, xi};
  auto g = [&](cplx eta) {
    const auto p = ev(m, eta);
    return p.deriv / (q + p.value) - 1.0 / (eta + I * beta);
  };
  const auto r = line_log_integral(g, w, xi, opt.tol);
  check(r, "phi_minus_0");
  return {std::exp(r.value), Representation::Direct, w, r.error, q, xi};
}

WHEval phi_minus_0_sl(const LevyModel& m, cplx xi, double tol) {
  require_sl(m);
  require_nonpositive_drift(m);
  cplx prod = 1.0;
  for (const auto& z : find_axis_zeros(m, 0.0).zeros) {
    if (z.beta >= 0) continue;
    prod *= -z.beta / (-z.beta + I * xi);
  }
  double err = 0.0;
  if (m.family() == Family::HEJD) {
    for (double a : axis_poles(m).upper) prod *= (a + I * xi) / a;
  } else if (std::isfinite(m.traits().strip_hi) && xi != 0.0) {
    auto qpsi = [&](double z) { return detail::psi_eval(m, cplx(0, z), +1).value; };
    const auto r = cut_integral(qpsi, m.traits().strip_hi, -I * xi, tol);
    check(r, "phi_minus_0_sl");
    prod *= std::exp(r.value);
    err = r.error;
  }
  return {prod, Representation::SLCut, NAN, err, 0.0, xi};
}

WHEval phi_plus(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (q.imag() == 0 && q.real() > 0 && m.traits().sl_kind == SLKind::SL && std::isnan(opt.omega))
    return phi_plus_sl(m, q.real(), xi, opt.tol);
  return phi_plus_direct(m, q, xi, opt);
}

WHEval phi_minus(const LevyModel& m, cplx q, cplx xi, const WHOptions& opt) {
  if (q.imag() == 0 && q.real() > 0 && m.traits().sl_kind == SLKind::SL && std::isnan(opt.omega))
    return phi_minus_sl(m, q.real(), xi, opt.tol);
  return phi_minus_direct(m, q, xi, opt);
}

FactorLine plus_factor_on_line(const LevyModel& m, cplx q, const std::vector<cplx>& probes,
                               double tol, double tilt) {
  double bottom = std::numeric_limits<double>::infinity();
  for (const cplx& p : probes) bottom = std::min(bottom, p.imag());
  const double w = plus_factor_line(m, q, bottom);
  auto g = [&m, q](cplx eta) {
    const auto p = ev(m, eta);
    return p.deriv / (q + p.value);
  };
  return FactorLine(g, w, -1.0, probes, tol, tilt);
}

FactorLine minus_factor_on_line(const LevyModel& m, cplx q, const std::vector<cplx>& probes,
                                double tol, double tilt) {
  double top = -std::numeric_limits<double>::infinity();
  for (const cplx& p : probes) top = std::max(top, p.imag());
  const double w = minus_factor_line(m, q, top);
  auto g = [&m, q](cplx eta) {
    const auto p = ev(m, eta);
    return p.deriv / (q + p.value);
  };
  return FactorLine(g, w, 1.0, probes, tol, tilt);
}

FactorLine minus0_factor_on_line(const LevyModel& m, const std::vector<cplx>& probes,
                                 double tol, double tilt) {
  require_nonpositive_drift(m);
  const double w = 0.5 * std::min(upper_end(m), 1.0);
  for (const cplx& p : probes)
    if (!(p.imag() < w)) throw ContourError("probe above the factor line");
  auto g = [&m](cplx eta) {
    const auto p = ev(m, eta);
    return p.deriv / p.value - 1.0 / eta;
  };
  return FactorLine(g, w, 1.0, probes, tol, tilt);
}

}  // namespace levywh
