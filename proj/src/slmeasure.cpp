#include "levywh/slmeasure.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "levywh/quadrature.hpp"

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;

double start_of(const LevyModel& m, MeasureSide side) {
  const auto& t = m.traits();
  return side == MeasureSide::Plus ? -t.strip_lo : t.strip_hi;
}

}  // namespace

SLDensity sl_info(const LevyModel& m, MeasureSide side) {
  if (m.traits().sl_kind == SLKind::NotSL)
    throw UnsupportedError("model has no Stieltjes-Levy representation");
  SLDensity d{side, start_of(m, side), {}, m.traits().sl_kind == SLKind::sSL};
  if (m.family() == Family::HEJD) {
    const auto& h = m.as<Hejd>();
    for (const auto& term : side == MeasureSide::Plus ? h.pos_terms : h.neg_terms)
      d.atoms.push_back({term.alpha, term.p * term.alpha});
  }
  return d;
}

double sl_density(const LevyModel& m, MeasureSide side, double t) {
  if (m.traits().sl_kind == SLKind::NotSL)
    throw UnsupportedError("model has no Stieltjes-Levy representation");
  if (m.family() == Family::HEJD)
    throw DomainError("HEJD measure is atomic; use sl_info(...).atoms");
  const double s = start_of(m, side);
  if (!std::isfinite(s)) return 0.0;
  if (!(t > s)) throw DomainError("sl_density: t lies inside the strip");
  const cplx v = side == MeasureSide::Plus ? psi_cut(m, CutSide::Lower, Bank::Minus, t)
                                           : psi_cut(m, CutSide::Upper, Bank::Plus, t);
  return v.imag() / kPi;
}

double levy_density_reconstruct(const LevyModel& m, double x, double tol) {
  if (x == 0) throw DomainError("levy_density_reconstruct: x must be nonzero");
  const MeasureSide side = x > 0 ? MeasureSide::Plus : MeasureSide::Minus;
  const SLDensity info = sl_info(m, side);
  const double ax = std::abs(x);
  double total = 0.0;
  for (const auto& a : info.atoms) total += a.mass * std::exp(-a.location * ax);
  if (m.family() == Family::HEJD || !std::isfinite(info.support_start)) return total;

  const double s = info.support_start;
  // integrand in log-distance from the support start
  auto f = [&](double v) {
    const double tau = std::exp(v);
    if (!(s + tau > s)) return 0.0;
    return tau * std::exp(-(s + tau) * ax) * sl_density(m, side, s + tau);
  };
  double vmax = std::log(60.0 / ax);
  while (std::abs(f(vmax)) > 1e-3 * tol * std::exp(-s * ax)) vmax += 0.5;
  const double vmin = std::log(1e-16 / ax);
  std::vector<double> breaks;
  for (double v = vmin; v < vmax; v += 2.0) breaks.push_back(v);
  breaks.push_back(vmax);
  auto r = integrate_panels<double>(f, breaks, tol * std::exp(-s * ax), 1e-13);
  if (!r.converged) throw QuadratureError("Levy density reconstruction did not converge", r.error);
  return total + r.value;
}

double sl_measure_interval(const LevyModel& m, MeasureSide side, double u, double v,
                           double tol) {
  if (u > v) throw DomainError("sl_measure_interval: need u <= v");
  const SLDensity info = sl_info(m, side);
  if (u < info.support_start && std::isfinite(info.support_start))
    throw DomainError("sl_measure_interval: u below the support");
  double total = 0.0;
  for (const auto& a : info.atoms)
    if (a.location > u && a.location <= v) total += a.mass;
  if (u == v || m.family() == Family::HEJD || !std::isfinite(info.support_start)) return total;
  const double s = info.support_start;
  // near the support start the density behaves like a power of (t - s)
  auto f = [&](double w) {
    const double t = s + std::exp(w);
    if (!(t > s)) return 0.0;
    return std::exp(w) * sl_density(m, side, t);
  };
  const double a = u > s ? std::log(u - s) : std::log(1e-300 + 1e-18 * (v - s));
  const double b = std::log(v - s);
  auto r = integrate<double>(f, a, b, tol, 1e-13);
  if (!r.converged) throw QuadratureError("measure integral did not converge", r.error);
  return total + r.value;
}

}  // namespace levywh
