#include "levywh/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI(0.0, 2 * kPi);

cplx log1p_c(cplx z) {
  if (std::abs(z) < 1e-5) return z * (1.0 - z * (0.5 - z / 3.0));
  return std::log(1.0 + z);
}

std::vector<double> sinh_breaks(double U, double extra) {
  std::vector<double> b{-U, U, 0.0};
  if (std::isfinite(extra) && std::abs(extra) < U) b.push_back(extra);
  for (double u = 4.0; u < U; u += 4.0) {
    b.push_back(u);
    b.push_back(-u);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

// Principal log; the libm version is very slow for |z| close to 1.
cplx plog(cplx z) {
  const double x = z.real(), y = z.imag();
  const double re = std::abs(x - 1) < 0.5 && std::abs(y) < 0.5
                        ? 0.5 * std::log1p((x - 1) * (x + 1) + y * y)
                        : std::log(std::hypot(x, y));
  return {re, std::atan2(y, x)};
}

cplx log_ratio(cplx eta, cplx xi) {
  const cplx r = xi / eta;
  if (std::abs(r) < 0.25) return -log1p_c(-r);
  return plog(eta) - plog(eta - xi);
}

QuadResult<cplx> line_log_integral(const CFun& g, double omega, cplx xi, double tol) {
  const double a = std::max(std::abs(omega), 1e-8);
  const double U = std::asinh(1e16 * (1 + std::abs(xi)) / a);
  auto f = [&](double u) {
    const cplx eta(a * std::sinh(u), omega);
    return g(eta) * log_ratio(eta, xi) * (a * std::cosh(u)) / kTwoPiI;
  };
  return integrate_panels<cplx>(f, sinh_breaks(U, std::asinh(xi.real() / a)), tol, 0.0, 6000);
}

QuadResult<cplx> line_integral(const CFun& h, double omega, double scale, double tol,
                               double extra_break) {
  const double a = std::max(scale, 1e-8);
  const double U = std::asinh(1e30 / a);
  auto f = [&](double u) {
    const cplx eta(a * std::sinh(u), omega);
    return h(eta) * (a * std::cosh(u)) / kTwoPiI;
  };
  return integrate_panels<cplx>(f, sinh_breaks(U, std::asinh(extra_break / a)), tol, 0.0, 6000);
}

FactorLine::FactorLine(const CFun& g, double omega, double sign, const std::vector<cplx>& probes,
                       double tol, double tilt)
    : omega_(omega) {
  const double a = std::max(std::abs(omega), 1e-8);
  double xmax = 1.0;
  for (const cplx& p : probes) xmax = std::max(xmax, std::abs(p));
  const double U = std::asinh(1e14 * (1 + xmax) / a);

  std::vector<double> us;
  std::vector<cplx> etas, cs;  // node, g(eta) * d eta / du
  auto add = [&](double u) {
    const cplx w(u, tilt);
    const cplx eta = cplx(0.0, omega - a * std::sin(tilt)) + a * std::sinh(w);
    us.push_back(u);
    etas.push_back(eta);
    cs.push_back(g(eta) * (a * std::cosh(w)));
  };
  double h = 0.5;
  for (double u = 0; u <= U; u += h) {
    add(u);
    if (u > 0) add(-u);
  }
  auto sums = [&](double step) {
    std::vector<cplx> s(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < etas.size(); ++j) acc += cs[j] * log_ratio(etas[j], probes[p]);
      s[p] = acc * step * sign / kTwoPiI;
    }
    return s;
  };
  std::vector<cplx> prev = sums(h);
  error_ = INFINITY;
  for (int level = 0; level < 10; ++level) {
    const std::size_t n = us.size();
    for (std::size_t j = 0; j < n; ++j)
      if (us[j] >= 0 && us[j] + h / 2 <= U) {
        add(us[j] + h / 2);
        add(-(us[j] + h / 2));
      }
    h /= 2;
    std::vector<cplx> cur = sums(h);
    double diff = 0.0;
    for (std::size_t p = 0; p < cur.size(); ++p) diff = std::max(diff, std::abs(cur[p] - prev[p]));
    prev = std::move(cur);
    // the error squares with each halving once the rule converges geometrically
    error_ = diff < 1e-3 ? 10 * diff * diff : diff;
    if (error_ < tol) break;
  }
  eta_ = std::move(etas);
  weight_.resize(cs.size());
  for (std::size_t j = 0; j < cs.size(); ++j) weight_[j] = cs[j] * h * sign / kTwoPiI;
}

cplx FactorLine::log_value(cplx xi) const {
  cplx acc = 0.0;
  // eta and eta - xi lie in the same half-plane, so one principal log suffices
  for (std::size_t j = 0; j < eta_.size(); ++j) acc += weight_[j] * plog(eta_[j] / (eta_[j] - xi));
  return acc;
}

cplx cone_point(const Cone& c, double r, bool right) {
  const cplx apex(0.0, c.omega);
  if (right) return apex + r * std::polar(1.0, c.dir * c.gamma);
  return apex - r * std::polar(1.0, -c.dir * c.gamma);
}

QuadResult<cplx> cone_integral(const std::function<cplx(cplx)>& f, const Cone& c, double tol) {
  const double a = c.scale;
  const double V = std::asinh(c.r_max / a);
  const cplx dr = std::polar(1.0, c.dir * c.gamma);
  const cplx dl = std::polar(1.0, -c.dir * c.gamma);
  auto g = [&](double v) {
    const double r = a * std::sinh(v);
    const double jac = a * std::cosh(v);
    return (f(cone_point(c, r, true)) * dr + f(cone_point(c, r, false)) * dl) * jac;
  };
  std::vector<double> breaks{0.0};
  for (double v = 1.0; v < V; v += 2.0) breaks.push_back(v);
  breaks.push_back(V);
  return integrate_panels<cplx>(g, breaks, tol, 0.0, 8000);
}

namespace {

// Accumulated change of arg f along the polyline p(t), t in [0, 1], refining
// where the argument moves quickly.
bool track_arg(const std::function<cplx(cplx)>& f, const std::function<cplx(double)>& p,
               double& total) {
  struct Seg {
    double t0, t1;
    cplx f0, f1;
    int depth;
  };
  const int n0 = 64;
  std::vector<Seg> stack;
  std::vector<cplx> fv(n0 + 1);
  for (int k = 0; k <= n0; ++k) fv[k] = f(p(static_cast<double>(k) / n0));
  for (int k = n0 - 1; k >= 0; --k)
    stack.push_back({static_cast<double>(k) / n0, static_cast<double>(k + 1) / n0, fv[k], fv[k + 1], 0});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.f0 == 0.0 || s.f1 == 0.0 || !std::isfinite(std::abs(s.f0)) ||
        !std::isfinite(std::abs(s.f1)))
      return false;
    const double d = std::arg(s.f1 / s.f0);
    if (std::abs(d) > 0.3 || std::abs(std::log(std::abs(s.f1 / s.f0))) > 1.0) {
      if (s.depth > 40) return false;
      const double tm = 0.5 * (s.t0 + s.t1);
      const cplx fm = f(p(tm));
      stack.push_back({tm, s.t1, fm, s.f1, s.depth + 1});
      stack.push_back({s.t0, tm, s.f0, fm, s.depth + 1});
      continue;
    }
    total += d;
  }
  return true;
}

}  // namespace

int wedge_zero_count(const std::function<cplx(cplx)>& f, const Cone& c) {
  int count = 0;
  const cplx apex(0.0, c.omega);
  const double R = std::min(c.r_max, 1e8);
  for (bool right : {true, false}) {
    const double sx = right ? 1.0 : -1.0;
    // geometric spacing from the apex outwards
    auto radial = [&](double t) { return R * std::pow(t, 6.0); };
    auto along_line = [&](double t) { return apex + sx * radial(t); };
    auto arc = [&](double t) {
      const double th0 = right ? 0.0 : kPi;
      const double th1 = th0 + (right ? 1.0 : -1.0) * c.dir * c.gamma;
      return apex + R * std::polar(1.0, th0 + t * (th1 - th0));
    };
    auto ray_back = [&](double t) { return cone_point(c, radial(1.0 - t), right); };
    double total = 0.0;
    if (!track_arg(f, along_line, total) || !track_arg(f, arc, total) ||
        !track_arg(f, ray_back, total))
      return -1;
    // traversal is clockwise for the right wedge of a downward cone
    const double orient = (right ? 1.0 : -1.0) * (c.dir < 0 ? -1.0 : 1.0);
    count += static_cast<int>(std::lround(orient * total / (2 * kPi)));
  }
  return count;
}

}  // namespace levywh
