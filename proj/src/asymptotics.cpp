#include "levywh/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "levywh/contour.hpp"
#include "levywh/inversion.hpp"
#include "levywh/quadrature.hpp"
#include "levywh/roots.hpp"
#include "levywh/slmeasure.hpp"
#include "levywh/whf.hpp"
#include "model_eval.hpp"
#include "parallel.hpp"

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTilt = std::numbers::pi / 8;
const cplx I(0.0, 1.0);

using Diag = std::map<std::string, std::vector<double>>;

double drift_tol(const LevyModel& m) { return 1e-12 * (1 + m.traits().mu2); }

// Weights of the central difference for the k-th derivative on offsets -p..p
// (Fornberg's recursion).
std::vector<double> fd_weights(int k, int p) {
  const int n = 2 * p + 1;
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = j - p;
  std::vector<std::vector<double>> c(n, std::vector<double>(k + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      for (int d = std::min(i, k); d >= 0; --d) {
        if (j == i - 1) {
          c[i][d] = c1 / c2 * ((d > 0 ? d * c[i - 1][d - 1] : 0.0) - x[i - 1] * c[i - 1][d]);
        }
        c[j][d] = (x[i] * c[j][d] - (d > 0 ? d * c[j][d - 1] : 0.0)) / c3;
      }
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][k];
  return w;
}

// Zeros -i beta of psi with beta > 0 (simple ones only).
std::vector<double> lower_zeros(const LevyModel& m, bool require_simple) {
  std::vector<double> out;
  for (const auto& z : find_axis_zeros(m, 0.0).zeros) {
    if (z.beta <= 0) continue;
    if (require_simple && z.multiplicity > 1)
      throw UnsupportedError("zero of psi on the lower half-axis is not simple");
    out.push_back(z.beta);
  }
  return out;
}

// Lower end of the region of analyticity on the negative imaginary half-axis.
double lower_end(const LevyModel& m) {
  if (m.family() == Family::HEJD) {
    const auto p = axis_poles(m);
    return p.lower.empty() ? std::numeric_limits<double>::infinity() : p.lower.front();
  }
  return -m.traits().strip_lo;
}

// Im xi of a line below the origin with no zero of psi between it and the real axis.
double omega_prime(const LevyModel& m, Diag& d) {
  double reach = std::min(lower_end(m), 100.0);
  std::vector<double> z;
  for (const auto& s : find_strip_zeros(m, 0.0).zeros)
    if (s.beta > 0) z.push_back(s.beta);
  if (!z.empty()) reach = std::min(reach, z.front());
  d["zeros"] = z;
  return -0.5 * std::min(reach, 2.0);
}

// (1/2 pi) \int_{Im xi = omega} num(xi) / (phi_0^{-,0}(xi) psi(xi)) d xi, with the
// line bent down into a cone.
cplx generic_integral(const LevyModel& m, double omega, double r_max,
                      const std::function<cplx(cplx)>& num, double tol, Diag& d) {
  Cone c;
  c.omega = omega;
  c.dir = -1;
  c.scale = std::abs(omega);
  c.r_max = r_max;
  auto psi_f = [&](cplx xi) { return detail::psi_eval(m, xi, 0).value; };
  if (wedge_zero_count(psi_f, c) != 0)
    throw ContourError("psi vanishes between the line and the cone");
  std::vector<cplx> probes{cplx(0, omega)};
  for (double r : {c.scale, 1.0, 10.0, 1e3, r_max}) {
    probes.push_back(cone_point(c, r, true));
    probes.push_back(cone_point(c, r, false));
  }
  const FactorLine fl = minus0_factor_on_line(m, probes, tol / 10, kTilt);
  Cone up;
  up.dir = 1;
  up.gamma = kTilt;
  up.omega = fl.omega();
  up.r_max = 1e6;
  if (wedge_zero_count(psi_f, up) != 0)
    throw ContourError("psi vanishes next to the factor contour");
  auto f = [&](cplx xi) {
    return num(xi) * std::exp(-fl.log_value(xi)) / detail::psi_eval(m, xi, 0).value;
  };
  const auto r = cone_integral(f, c, tol * 2 * kPi);
  if (!r.converged) throw QuadratureError("cone integral did not converge", r.error);
  d["omega_prime"] = {omega};
  d["r_max"] = {r_max};
  d["quad_error"] = {r.error / (2 * kPi) + fl.achieved_error()};
  d["evaluations"] = {static_cast<double>(r.evaluations)};
  return r.value / (2 * kPi);
}

// \int_{w0}^inf weight(w) Im psi(-iw-0) / (phi_0^{-,0}(-iw) |psi(-iw-0)|^2) dw.
cplx cut_term(const LevyModel& m, const std::function<double(double)>& weight, double tol,
              Diag& d) {
  if (m.family() == Family::HEJD || !std::isfinite(m.traits().strip_lo)) return 0.0;
  const double w0 = -m.traits().strip_lo;
  const cplx edge = detail::psi_eval(m, cplx(0, -w0), -1).value;
  d["psi_at_support_edge"] = {std::abs(edge)};
  if (!(std::abs(edge) > 1e-8))
    throw UnsupportedError("psi vanishes at the edge of the SL support: |psi|^-2 not integrable");
  // phi_0^{-,0} on the lower axis through its own SL representation
  auto phi0 = [&m](double w) { return phi_minus_0_sl(m, cplx(0, -w), 1e-12).value; };
  auto f = [&](double v) -> cplx {
    const double e = std::exp(v);
    const double w = w0 + e;
    if (!(w > w0)) return 0.0;
    const double wt = weight(w);
    if (wt == 0) return 0.0;
    const cplx p = detail::psi_eval(m, cplx(0, -w), -1).value;
    // Im psi(-iw-0) = pi g_+(w)
    const double dens = kPi * sl_density(m, MeasureSide::Plus, w);
    return wt * dens / (phi0(w) * std::norm(p)) * e;
  };
  std::vector<double> br;
  const double vmin = std::log(1e-14 * (1 + w0)), vmax = std::log(1e30);
  for (double v = vmin; v < vmax; v += 3.0) br.push_back(v);
  br.push_back(vmax);
  const auto r = integrate_panels<cplx>(f, br, tol, 0.0, 2000);
  if (!r.converged) throw QuadratureError("SL cut integral did not converge", r.error);
  d["cut_integral"] = {r.value.real(), r.value.imag()};
  d["cut_error"] = {r.error};
  return r.value;
}

void require_sl_refined(const LevyModel& m) {
  if (m.traits().sl_kind != SLKind::SL)
    throw UnsupportedError("SL-refined form needs an SL model (zeros on the imaginary axis)");
}

double real_part_checked(cplx v, double scale, const char* what) {
  if (std::abs(v.imag()) > 1e-6 * (1 + scale))
    throw SanityError(std::string(what) + ": imaginary part does not vanish");
  return v.real();
}

}  // namespace

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::LowerTail: return "LowerTail";
    case Regime::DriftNeg: return "DriftNeg";
    case Regime::DriftPos: return "DriftPos";
    case Regime::DriftZero: return "DriftZero";
  }
  return "?";
}

std::string_view form_name(AsympForm f) {
  return f == AsympForm::Generic ? "Generic" : "SLRefined";
}

AsympResult lower_tail_coeff(const LevyModel& m, double t, int k) {
  if (!(t > 0)) throw DomainError("t must be > 0");
  if (k < 0) throw DomainError("k must be >= 0");
  const auto& tr = m.traits();
  const EulerInversionParams p;
  const auto qs = euler_nodes(t, p);
  std::vector<cplx> fq(qs.size());
  const int side = k == 0 ? 0 : 2 + (k - 1) / 2;
  const std::vector<double> w = k == 0 ? std::vector<double>{1.0} : fd_weights(k, side);
  auto F = [&](cplx q) { return phi_q_infty_plus(m, q, 1e-13) / q; };
  detail::parallel_for(qs.size(), [&](std::size_t i) {
    const cplx q = qs[i];
    if (k == 0) {
      fq[i] = F(q);
      return;
    }
    const double h = 1e-3 * std::abs(q);
    cplx acc = 0.0;
    for (int j = -side; j <= side; ++j)
      if (w[j + side] != 0) acc += w[j + side] * F(q + static_cast<double>(j) * h);
    fq[i] = acc / std::pow(h, k);
  });
  const auto v = euler_combine(fq, t, p);
  const double denom = std::tgamma(1 + tr.nu_plus) * std::pow(-t, k);
  const double kappa = v.value / denom;
  const double err = v.error / std::abs(denom);
  if (!(err < 1e-5 * std::abs(kappa) + 1e-12))
    throw ConvergenceError("lower-tail coefficient: Laplace inversion did not settle", err);
  AsympResult out{Regime::LowerTail, kappa, tr.nu_plus, AsympForm::Generic, {}};
  out.diagnostics["sigma"] = {p.A / (2 * t)};
  out.diagnostics["k"] = {static_cast<double>(k)};
  out.diagnostics["inversion_error"] = {err};
  out.diagnostics["nodes"] = {static_cast<double>(qs.size())};
  return out;
}

double lower_tail_approx(const LevyModel& m, double t, double x) {
  if (!(x > 0)) throw DomainError("x must be > 0");
  double kappa;
  try {
    kappa = lower_tail_coeff(m, t, 0).coefficient;
  } catch (const ConvergenceError&) {
    kappa = lower_tail_coeff(m, t, 1).coefficient;
  }
  return kappa * std::pow(x, m.traits().nu_plus);
}

Regime classify_regime(const LevyModel& m) {
  const double mu1 = m.traits().mu1;
  if (std::abs(mu1) < drift_tol(m)) return Regime::DriftZero;
  return mu1 < 0 ? Regime::DriftNeg : Regime::DriftPos;
}

AsympResult p_infinity(const LevyModel& m, double x, AsympForm form) {
  if (!(x > 0)) throw DomainError("x must be > 0");
  if (classify_regime(m) != Regime::DriftNeg) throw RegimeError("p_infinity requires mu1 < 0");
  const double mu1 = m.traits().mu1;
  AsympResult out{Regime::DriftNeg, 0.0, 0.0, form, {}};
  cplx v;
  if (form == AsympForm::Generic) {
    const double w = omega_prime(m, out.diagnostics);
    const double r_max = std::min(1e30, std::max(1e3, 60.0 / (x * std::sin(kTilt))));
    v = generic_integral(
        m, w, r_max, [&](cplx xi) { return -mu1 * std::exp(-I * x * xi); }, 1e-11,
        out.diagnostics);
  } else {
    require_sl_refined(m);
    const auto zs = lower_zeros(m, true);
    out.diagnostics["zeros"] = zs;
    cplx sum = 0.0;
    for (double b : zs) {
      const cplx xi(0, -b);
      sum += std::exp(-x * b) /
             (phi_minus_0_sl(m, xi).value * I * detail::psi_eval(m, xi, 0).deriv);
    }
    const cplx cut = cut_term(m, [x](double w) { return std::exp(-x * w); }, 1e-12,
                              out.diagnostics);
    v = -mu1 * (sum + cut / kPi);
  }
  out.coefficient = real_part_checked(v, 1.0, "p_infinity");
  out.diagnostics["imag_residual"] = {v.imag()};
  if (!(out.coefficient > -1e-6 && out.coefficient < 1 + 1e-6))
    throw SanityError("p_infinity outside [0, 1]: " + std::to_string(out.coefficient));
  return out;
}

AsympResult p_infinity_zero_drift(const LevyModel& m, double x, AsympForm form) {
  if (!(x > 0)) throw DomainError("x must be > 0");
  if (classify_regime(m) != Regime::DriftZero)
    throw RegimeError("p_infinity_zero_drift requires mu1 = 0");
  const auto& tr = m.traits();
  if (!(tr.nu_plus > 0)) throw UnsupportedError("p_infinity_zero_drift requires nu_+ > 0");
  AsympResult out{Regime::DriftZero, 0.0, -0.5, form, {}};
  cplx v;
  if (form == AsympForm::Generic) {
    const double w = omega_prime(m, out.diagnostics);
    v = generic_integral(
        m, w, 1e30, [&](cplx xi) { return 1.0 - std::exp(-I * x * xi); }, 1e-11,
        out.diagnostics);
  } else {
    require_sl_refined(m);
    const auto zs = lower_zeros(m, true);
    out.diagnostics["zeros"] = zs;
    cplx sum = 0.0;
    for (double b : zs) {
      const cplx xi(0, -b);
      sum += -std::expm1(-x * b) /
             (phi_minus_0_sl(m, xi).value * I * detail::psi_eval(m, xi, 0).deriv);
    }
    const cplx cut = cut_term(m, [x](double w) { return -std::expm1(-x * w); }, 1e-12,
                              out.diagnostics);
    v = sum + cut / kPi;
  }
  const double corr = real_part_checked(v, 1.0, "p_infinity_zero_drift");
  out.diagnostics["correction"] = {corr};
  out.diagnostics["imag_residual"] = {v.imag()};
  // the contour term enters with the weight 1/(-beta_q^-) ~ (mu2 / 2q)^{1/2}, hence mu2 / 2
  out.coefficient = std::sqrt(2 / (tr.mu2 * kPi)) * (x + tr.mu2 / 2 * corr);
  return out;
}

double drift_pos_decay_check(const LevyModel& m, const std::vector<double>& t_list, double x) {
  if (classify_regime(m) != Regime::DriftPos)
    throw RegimeError("drift_pos_decay_check requires mu1 > 0");
  if (t_list.size() < 2) throw DomainError("drift_pos_decay_check needs at least two horizons");
  std::vector<double> lx, ly;
  for (double t : t_list) {
    const double p = survival_prob(m, t, x);
    lx.push_back(std::log(t));
    // an exact zero is below resolution; floor it so the fit still sees the decay
    ly.push_back(std::log(std::max(p, 1e-300)));
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0)) throw DomainError("drift_pos_decay_check: horizons must differ");
  return (n * sxy - sx * sy) / den;
}

}  // namespace levywh
