#include "levywh/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "model_eval.hpp"

namespace levywh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFarEnd = 1e8;

double tol_root(double q) { return 1e-12 * (1 + std::abs(q)); }

// q + psi(i y) and its derivative in y; real inside the domain of analyticity.
struct AxisFn {
  const LevyModel& m;
  double q;
  double operator()(double y) const { return q + detail::psi_eval(m, cplx(0, y), 0).value.real(); }
  double deriv(double y) const { return -detail::psi_eval(m, cplx(0, y), 0).deriv.imag(); }
};

// Nodes in (a, b) accumulating geometrically at both ends (or only at a when b is infinite).
std::vector<double> scan_nodes(double a, double b, int n) {
  std::vector<double> x;
  const int half = n / 2;
  if (std::isfinite(a) && std::isfinite(b)) {
    const double L = (b - a) / 2;
    for (int k = 0; k < half; ++k) x.push_back(a + L * std::pow(10.0, -12.0 + 12.0 * k / half));
    for (int k = half; k >= 0; --k) x.push_back(b - L * std::pow(10.0, -12.0 + 12.0 * k / half));
  } else if (std::isfinite(a)) {
    for (int k = 0; k <= n; ++k) x.push_back(a + std::pow(10.0, -12.0 + 20.0 * k / n));
  } else {
    for (int k = n; k >= 0; --k) x.push_back(b - std::pow(10.0, -12.0 + 20.0 * k / n));
  }
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

double refine(const AxisFn& f, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double d = f.deriv(y);
    if (d == 0) break;
    const double step = f(y) / d;
    const double yn = y - step;
    if (!(std::abs(f(yn)) < std::abs(f(y)))) break;
    y = yn;
  }
  return y;
}

std::vector<double> roots_in(const AxisFn& f, double a, double b, int n) {
  std::vector<double> out;
  const auto x = scan_nodes(a, b, n);
  double fp = f(x[0]);
  for (std::size_t k = 1; k < x.size(); ++k) {
    const double fc = f(x[k]);
    if (fc == 0) {
      out.push_back(x[k]);
    } else if ((fc < 0) != (fp < 0) && fp != 0) {
      out.push_back(refine(f, x[k - 1], x[k], fp));
    }
    fp = fc;
  }
  return out;
}

// Intervals of the imaginary axis (in y) on which psi(i y) is analytic and real.
std::vector<std::pair<double, double>> axis_intervals(const LevyModel& m, bool beyond_strip) {
  const auto& t = m.traits();
  std::vector<std::pair<double, double>> iv;
  if (m.family() == Family::HEJD && beyond_strip) {
    const AxisPoles p = axis_poles(m);
    double prev = 0.0;
    for (double a : p.lower) {
      iv.push_back({-a, prev});
      prev = -a;
    }
    iv.push_back({-kInf, prev});
    prev = 0.0;
    for (double a : p.upper) {
      iv.push_back({prev, a});
      prev = a;
    }
    iv.push_back({prev, kInf});
  } else {
    iv.push_back({std::isfinite(t.strip_lo) ? t.strip_lo : -kFarEnd, 0.0});
    iv.push_back({0.0, std::isfinite(t.strip_hi) ? t.strip_hi : kFarEnd});
  }
  for (auto& [a, b] : iv) {
    if (!std::isfinite(a)) a = b - kFarEnd;
    if (!std::isfinite(b)) b = a + kFarEnd;
  }
  return iv;
}

ZeroSet find_zeros(const LevyModel& m, double q, bool beyond_strip) {
  if (!(q >= 0)) throw DomainError("find_strip_zeros: q must be >= 0");
  const AxisFn f{m, q};
  const auto& t = m.traits();
  ZeroSet out;
  out.complete = t.sl_kind == SLKind::SL;
  std::vector<double> ys, ys_fine;
  for (auto [a, b] : axis_intervals(m, beyond_strip)) {
    // psi(i y) is rounding noise next to its root at the origin
    if (q == 0 && b == 0.0) b = -1e-6 * std::min(1.0, -a);
    if (q == 0 && a == 0.0) a = 1e-6 * std::min(1.0, b);
    for (double y : roots_in(f, a, b, 512)) ys.push_back(y);
    for (double y : roots_in(f, a, b, 2048)) ys_fine.push_back(y);
  }
  if (ys.size() != ys_fine.size())
    throw ConvergenceError("zero scan disagrees between grid resolutions",
                           static_cast<double>(ys_fine.size()) - ys.size());
  for (double y : ys) {
    const double res = std::abs(f(y));
    if (res > 1e-10 * (1 + q)) throw ConvergenceError("root polish failed", res);
    if (std::abs(y - t.strip_lo) < 1e-9 || std::abs(y - t.strip_hi) < 1e-9)
      out.boundary_warning = true;
    ImaginaryZero z{-y, 1, q};
    if (std::abs(detail::psi_eval(m, cplx(0, y), 0).deriv) < 1e-6) z.multiplicity = 2;
    out.zeros.push_back(z);
  }
  if (q == 0) {
    const bool flat = std::abs(t.mu1) < 1e-12 * (1 + t.mu2);
    out.zeros.push_back({0.0, flat ? 2 : 1, 0.0});
  }
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const ImaginaryZero& a, const ImaginaryZero& b) { return a.beta < b.beta; });
  return out;
}

cplx newton_beta(const LevyModel& m, cplx q, cplx beta) {
  auto g = [&](cplx b) { return q + detail::psi_eval(m, cplx(0, -1) * b, 0).value; };
  cplx gv = g(beta);
  const double tol = tol_root(std::abs(q));
  for (int it = 0; it < 50; ++it) {
    if (std::abs(gv) < tol) return beta;
    const cplx d = cplx(0, -1) * detail::psi_eval(m, cplx(0, -1) * beta, 0).deriv;
    cplx step = gv / d;
    for (int h = 0; h < 30; ++h) {
      const cplx bn = beta - step;
      const cplx gn = g(bn);
      if (std::abs(gn) < std::abs(gv) || h == 29) {
        beta = bn;
        gv = gn;
        break;
      }
      step *= 0.5;
    }
  }
  if (std::abs(gv) < tol) return beta;
  throw ConvergenceError("Newton iteration for beta_q did not converge", std::abs(gv));
}

}  // namespace

ZeroSet find_strip_zeros(const LevyModel& m, double q) { return find_zeros(m, q, false); }

ZeroSet find_axis_zeros(const LevyModel& m, double q) { return find_zeros(m, q, true); }

BetaPair beta_asymptotic(const LevyModel& m, cplx q) {
  if (q.imag() == 0 && q.real() <= 0) throw DomainError("beta_asymptotic: q on (-inf, 0]");
  const auto& t = m.traits();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BetaPair out{nan, nan};
  if (std::abs(t.mu1) < 1e-12 * (1 + t.mu2)) {
    const cplx s = std::sqrt(2.0 * q / t.mu2);
    out.beta_plus = newton_beta(m, q, s);
    out.beta_minus = newton_beta(m, q, -s);
    return out;
  }
  // the far zero continues the nonzero root of psi on the other half-axis
  double far = nan;
  for (const auto& z : find_strip_zeros(m, 0.0).zeros) {
    if (z.beta == 0) continue;
    if ((t.mu1 > 0) == (z.beta < 0) && (std::isnan(far) || std::abs(z.beta) < std::abs(far)))
      far = z.beta;
  }
  const cplx near = newton_beta(m, q, q / t.mu1);
  const cplx other = std::isnan(far) ? cplx(nan, nan) : newton_beta(m, q, far);
  if (t.mu1 > 0) {
    out.beta_plus = near;
    out.beta_minus = other;
  } else {
    out.beta_minus = near;
    out.beta_plus = other;
  }
  return out;
}

double axis_level_crossing(const LevyModel& m, double level, int dir) {
  const auto& t = m.traits();
  double end = dir > 0 ? t.strip_hi : -t.strip_lo;
  if (m.family() == Family::HEJD) {
    const AxisPoles p = axis_poles(m);
    const auto& v = dir > 0 ? p.upper : p.lower;
    end = v.empty() ? kInf : v.front();
  }
  const AxisFn f{m, level};
  auto g = [&](double y) { return f(dir * y); };
  const double stop = std::isfinite(end) ? end : kFarEnd;
  const auto x = scan_nodes(0.0, stop, 512);
  if (g(x[0]) <= 0) return 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (g(x[k]) <= 0) {
      double lo = x[k - 1], hi = x[k];
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0 ? lo : hi) = mid;
      }
      return lo;
    }
  }
  return end;
}

}  // namespace levywh
