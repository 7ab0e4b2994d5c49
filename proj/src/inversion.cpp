#include "levywh/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "levywh/contour.hpp"
#include "levywh/errors.hpp"
#include "levywh/quadrature.hpp"
#include "levywh/roots.hpp"
#include "levywh/whf.hpp"
#include "model_eval.hpp"
#include "parallel.hpp"

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

struct Outer {
  EulerInversionParams p;
  std::vector<cplx> qs;
  double sigma0;
  double omega;
  double inner_tol;
};

Outer make_outer(const LevyModel& m, double t, const InversionSpec& spec) {
  if (!(t > 0)) throw DomainError("t must be > 0");
  if (!(spec.tol > 0)) throw ParameterError("tol", "tol must be > 0");
  Outer o;
  if (!std::isnan(spec.sigma0)) {
    if (!(spec.sigma0 > 0)) throw ParameterError("sigma0", "sigma0 must be > 0");
    o.p.A = 2 * t * spec.sigma0;
  }
  if (!std::isnan(spec.q_truncation)) {
    const int total = static_cast<int>(std::ceil(spec.q_truncation * t / kPi));
    o.p.n = std::max(1, total - o.p.m - 1);
  }
  o.sigma0 = o.p.A / (2 * t);
  o.qs = euler_nodes(t, o.p);
  // a perturbation dI of the inner integral moves the result by about e^{A/2} (6/A) dI
  o.inner_tol = std::max(1e-15, spec.tol * o.p.A / (6 * std::exp(o.p.A / 2)));
  if (!std::isnan(spec.omega_minus)) {
    o.omega = spec.omega_minus;
  } else {
    o.omega = -0.5 * std::min(axis_level_crossing(m, o.sigma0, -1), 50.0);
  }
  if (!(o.omega < 0)) throw ParameterError("omega_minus", "omega_minus must be < 0");
  // q + psi keeps a positive real part between the real axis and the apex line
  const double reach = axis_level_crossing(m, o.sigma0, -1);
  if (!(-o.omega < reach))
    throw ContourError("omega_minus lies beyond the zero-free part of the strip");
  return o;
}

Cone make_cone(const Outer& o, double x, const InversionSpec& spec) {
  Cone c;
  c.omega = o.omega;
  c.dir = -1;
  c.scale = std::abs(o.omega);
  c.r_max = std::isnan(spec.xi_truncation)
                ? std::min(1e8, std::max(1e3, 45.0 / (x * std::sin(c.gamma))))
                : spec.xi_truncation;
  return c;
}

constexpr double kTilt = std::numbers::pi / 8;

// The inner cone (below) and the bent factor line (above, at height omega_f)
// may only sweep over regions where q + psi has no zeros. Returns the largest
// usable bend of the factor line; for small |q| a zero close to the origin can
// force it down to a straight line.
double check_wedges(const LevyModel& m, const Outer& o, const Cone& c, int factor_dir) {
  for (cplx q : {o.qs.front(), o.qs.back()}) {
    auto f = [&](cplx xi) { return q + detail::psi_eval(m, xi, 0).value; };
    if (wedge_zero_count(f, c) != 0)
      throw ContourError("q + psi vanishes between the inner line and the cone");
  }
  for (double tilt : {kTilt, kTilt / 4, kTilt / 16}) {
    bool clear = true;
    for (cplx q : o.qs) {
      auto f = [&](cplx xi) { return q + detail::psi_eval(m, xi, 0).value; };
      Cone up;
      up.dir = factor_dir;
      up.gamma = tilt;
      up.omega =
          factor_dir > 0 ? minus_factor_line(m, q, o.omega) : plus_factor_line(m, q, o.omega);
      up.r_max = 1e6;
      if (wedge_zero_count(f, up) != 0) {
        clear = false;
        break;
      }
    }
    if (clear) return tilt;
  }
  return 0.0;
}

InversionResult finish(const Outer& o, double t, const std::vector<cplx>& fq, double inner_err,
                       int nodes, double tol) {
  const auto v = euler_combine(fq, t, o.p);
  InversionResult r{v.value, v.error + std::exp(o.p.A / 2) * 6 / o.p.A * inner_err, nodes,
                    o.sigma0, o.omega};
  const double slack = std::max(tol, 10 * r.error);
  if (!(r.value > -slack && r.value < 1 + slack))
    throw SanityError("inverted probability " + std::to_string(r.value) + " outside [0, 1]");
  r.value = std::clamp(r.value, 0.0, 1.0);
  return r;
}

// Chebyshev interpolant of a smooth function on [v0, v1], sized by doubling
// until off-node checks agree with the function to tol.
class Cheb {
 public:
  Cheb(const std::function<cplx(double)>& fn, double v0, double v1, double tol)
      : v0_(v0), v1_(v1) {
    for (int n = 32;; n *= 2) {
      x_.assign(n + 1, 0.0);
      w_.assign(n + 1, 0.0);
      f_.assign(n + 1, 0.0);
      for (int j = 0; j <= n; ++j) {
        x_[j] = v0 + 0.5 * (v1 - v0) * (1 - std::cos(j * kPi / n));
        w_[j] = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == n ? 0.5 : 1.0);
        f_[j] = fn(x_[j]);
      }
      error_ = 0.0;
      for (double frac : {0.013, 0.21, 0.47, 0.73, 0.96}) {
        const double v = v0 + frac * (v1 - v0);
        error_ = std::max(error_, std::abs((*this)(v) - fn(v)));
      }
      if (error_ < tol || n >= 1024) break;
    }
  }
  cplx operator()(double v) const {
    cplx num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double d = v - x_[j];
      if (d == 0) return f_[j];
      num += w_[j] / d * f_[j];
      den += w_[j] / d;
    }
    return num / den;
  }
  double error() const { return error_; }

 private:
  double v0_, v1_;
  double error_ = 0.0;
  std::vector<double> x_, w_;
  std::vector<cplx> f_;
};

// ln phi along both rays of a cone, interpolated in v = asinh(r / scale).
class RayInterpolant {
 public:
  RayInterpolant(const FactorLine& fl, const Cone& c, double tol)
      : cone_(c),
        right_([&](double v) { return fl.log_value(cone_point(c, c.scale * std::sinh(v), true)); },
               0.0, std::asinh(c.r_max / c.scale), tol),
        left_([&](double v) { return fl.log_value(cone_point(c, c.scale * std::sinh(v), false)); },
              0.0, std::asinh(c.r_max / c.scale), tol) {}
  cplx log_value(cplx xi) const {
    const double v = std::asinh(std::abs(xi - cplx(0, cone_.omega)) / cone_.scale);
    return xi.real() > 0 ? right_(v) : left_(v);
  }
  double error() const { return std::max(right_.error(), left_.error()); }

 private:
  Cone cone_;
  Cheb right_, left_;
};

std::vector<cplx> factor_probes(const Cone& c) {
  std::vector<cplx> p{cplx(0, c.omega)};
  for (double r : {c.scale, 1.0, 10.0, c.r_max}) {
    p.push_back(cone_point(c, r, true));
    p.push_back(cone_point(c, r, false));
  }
  return p;
}

// (1/2 pi) \int_{Im xi = omega} e^{-ix xi} h(xi) d xi, summed over half-period
// panels and extrapolated.
constexpr int kMaxPanels = 60;

// Panel length: an odd number of half periods of e^{-ix s}, at least the line's scale.
double panel_length(double omega, double x) {
  const double a = std::max(std::abs(omega), 1e-3);
  const int j = 2 * static_cast<int>(std::ceil(std::max(1.0, a) * x / kPi / 2)) + 1;
  return j * kPi / x;
}

cplx oscillatory_line(const std::function<cplx(cplx)>& h, double omega, double x, double tol,
                      double& err, int& evals) {
  const double a = std::max(std::abs(omega), 1e-3);
  auto f = [&](double s) {
    const cplx xi(s, omega);
    return std::exp(-I * x * xi) * h(xi) / (2 * kPi);
  };
  const double L = panel_length(omega, x);
  const double U = std::asinh(L / a);
  auto core = [&](double u) { return f(a * std::sinh(u)) * (a * std::cosh(u)); };
  std::vector<double> br{-U, 0.0, U};
  for (double u = 2.0; u < U; u += 2.0) {
    br.push_back(u);
    br.push_back(-u);
  }
  std::sort(br.begin(), br.end());
  auto r0 = integrate_panels<cplx>(core, br, tol / 4, 0.0, 4000);
  evals += r0.evaluations;
  err = r0.error;
  std::vector<cplx> partial{r0.value};
  cplx s = r0.value;
  for (int k = 1; k <= kMaxPanels; ++k) {
    auto rp = integrate<cplx>(f, k * L, (k + 1) * L, tol / 8, 0.0, 400);
    auto rm = integrate<cplx>(f, -(k + 1) * L, -k * L, tol / 8, 0.0, 400);
    evals += rp.evaluations + rm.evaluations;
    err += rp.error + rm.error;
    s += rp.value + rm.value;
    partial.push_back(s);
    if (std::abs(rp.value + rm.value) < tol / 100 && k > 3) break;
  }
  if (partial.size() < 4) return partial.back();
  const cplx acc = wynn_epsilon(partial);
  std::vector<cplx> shorter(partial.begin(), partial.end() - 1);
  err += std::abs(acc - wynn_epsilon(shorter));
  return acc;
}

}  // namespace

std::vector<InversionResult> survival_grid(const LevyModel& m, double t,
                                           const std::vector<double>& xs,
                                           const InversionSpec& spec) {
  for (double x : xs)
    if (!(x > 0)) throw DomainError("x must be > 0");
  const Outer o = make_outer(m, t, spec);
  std::vector<Cone> cones;
  for (double x : xs) cones.push_back(make_cone(o, x, spec));
  const double tilt = xs.empty() ? kTilt : check_wedges(m, o, cones.front(), +1);

  const std::size_t nq = o.qs.size(), nx = xs.size();
  std::vector<cplx> fq(nq * nx);
  std::vector<double> errs(nq * nx);
  std::vector<int> evals(nq * nx);
  detail::parallel_for(nq, [&](std::size_t k) {
    const cplx q = o.qs[k];
    std::vector<cplx> probes;
    for (const auto& c : cones)
      for (cplx p : factor_probes(c)) probes.push_back(p);
    const FactorLine fl = minus_factor_on_line(m, q, probes, o.inner_tol / 10, tilt);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = xs[i];
      const RayInterpolant lphi(fl, cones[i], o.inner_tol / 10);
      auto f = [&](cplx xi) {
        return q * std::exp(-I * x * xi - lphi.log_value(xi)) /
               (I * xi * (q + detail::psi_eval(m, xi, 0).value));
      };
      const auto r = cone_integral(f, cones[i], o.inner_tol * 2 * kPi);
      if (!r.converged)
        throw QuadratureError("survival_prob: inner integral did not converge", r.error);
      const cplx inner = r.value / (2 * kPi);
      fq[k * nx + i] = (1.0 - inner) / q;
      errs[k * nx + i] = r.error / (2 * kPi) + fl.achieved_error() + lphi.error();
      evals[k * nx + i] = r.evaluations;
    }
  });

  std::vector<InversionResult> out;
  for (std::size_t i = 0; i < nx; ++i) {
    std::vector<cplx> col(nq);
    double e = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < nq; ++k) {
      col[k] = fq[k * nx + i];
      e = std::max(e, errs[k * nx + i]);
      n += evals[k * nx + i];
    }
    out.push_back(finish(o, t, col, e, n, spec.tol));
  }
  return out;
}

InversionResult survival_prob_detail(const LevyModel& m, double t, double x,
                                     const InversionSpec& spec) {
  return survival_grid(m, t, {x}, spec).front();
}

double survival_prob(const LevyModel& m, double t, double x, const InversionSpec& spec) {
  return survival_prob_detail(m, t, x, spec).value;
}

InversionResult exceed_prob_detail(const LevyModel& m, double t, double x,
                                   const InversionSpec& spec) {
  if (!(x > 0)) throw DomainError("x must be > 0");
  const Outer o = make_outer(m, t, spec);
  const double tilt = check_wedges(m, o, make_cone(o, x, spec), -1);
  const std::size_t nq = o.qs.size();
  std::vector<cplx> fq(nq);
  std::vector<double> errs(nq);
  std::vector<int> evals(nq, 0);
  detail::parallel_for(nq, [&](std::size_t k) {
    const cplx q = o.qs[k];
    std::vector<cplx> probes;
    for (double s : {0.0, 1.0, -1.0, 1e3, -1e3, 1e6, -1e6}) probes.emplace_back(s, o.omega);
    const FactorLine fl = plus_factor_on_line(m, q, probes, o.inner_tol / 10, -tilt);
    const double a = std::max(std::abs(o.omega), 1e-3);
    const double V = std::asinh((kMaxPanels + 1) * panel_length(o.omega, x) / a);
    const Cheb lphi([&](double v) { return fl.log_value(cplx(a * std::sinh(v), o.omega)); }, -V,
                    V, o.inner_tol / 10);
    auto h = [&](cplx xi) { return std::exp(lphi(std::asinh(xi.real() / a))) / (I * xi); };
    double e = 0.0;
    const cplx j = oscillatory_line(h, o.omega, x, o.inner_tol, e, evals[k]);
    fq[k] = j / q;
    errs[k] = e + fl.achieved_error() + lphi.error();
  });
  return finish(o, t, fq, *std::max_element(errs.begin(), errs.end()),
                std::accumulate(evals.begin(), evals.end(), 0), spec.tol);
}

double exceed_prob(const LevyModel& m, double t, double x, const InversionSpec& spec) {
  const auto r = exceed_prob_detail(m, t, x, spec);
  return r.value;
}

InversionResult unit_integral_check(const LevyModel& m, double t, const InversionSpec& spec) {
  const Outer o = make_outer(m, t, spec);
  const std::size_t nq = o.qs.size();
  std::vector<cplx> fq(nq);
  std::vector<double> errs(nq);
  std::vector<int> evals(nq, 0);
  detail::parallel_for(nq, [&](std::size_t k) {
    const cplx q = o.qs[k];
    const std::vector<cplx> probes{cplx(0, o.omega), cplx(1e30, o.omega), cplx(-1e30, o.omega)};
    const FactorLine fl = plus_factor_on_line(m, q, probes, o.inner_tol / 10, -kTilt);
    auto h = [&](cplx xi) { return fl.value(xi) / (I * xi); };
    const auto r = line_integral(h, o.omega, std::abs(o.omega), o.inner_tol);
    if (!r.converged) throw QuadratureError("unit check: inner integral did not converge", r.error);
    fq[k] = I * r.value / q;
    errs[k] = r.error + fl.achieved_error();
    evals[k] = r.evaluations;
  });
  const auto v = euler_combine(fq, t, o.p);
  const double e = *std::max_element(errs.begin(), errs.end());
  return {v.value, v.error + std::exp(o.p.A / 2) * 6 / o.p.A * e,
          std::accumulate(evals.begin(), evals.end(), 0), o.sigma0, o.omega};
}

}  // namespace levywh
