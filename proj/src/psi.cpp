#include <cmath>
#include <numbers>

#include "model_eval.hpp"

namespace levywh {

namespace detail {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

// On the imaginary axis a base that is real and negative sits on a cut; the
// sign of the infinitesimal imaginary part decides the branch.
cplx pin(cplx base, int sign) {
  if (sign == 0) return base;
  return cplx(base.real(), std::copysign(0.0, static_cast<double>(sign)));
}

// One side of the tempered stable exponent as a function of base = lam -+ i xi.
PsiPair kobol_term(double c, double nu, double lam, cplx base) {
  if (c == 0) return {0.0, 0.0};
  if (nu == 0) return {c * (std::log(base) - std::log(lam)), c / base};
  if (nu == 1) {
    if (base == 0.0) return {c * lam * std::log(lam) - c * (std::log(lam) + 1) * lam, INFINITY};
    const cplx lb = std::log(base);
    const double ll = std::log(lam);
    return {-c * (base * lb - lam * ll) + c * (ll + 1) * (base - lam), -c * (lb - ll)};
  }
  const double g = c * std::tgamma(-nu);
  const cplx pw = std::pow(base, nu - 1);
  return {g * (std::pow(lam, nu) - std::pow(base, nu)), -g * nu * pw};
}

PsiPair eval(const BrownianDrift& p, cplx xi, int) {
  return {p.sigma2 * xi * xi / 2.0 - I * p.mu * xi, p.sigma2 * xi - I * p.mu};
}

PsiPair eval(const Merton& p, cplx xi, int) {
  const double s2 = p.sigma * p.sigma;
  const cplx e = std::exp(I * p.m * xi - p.s * p.s * xi * xi / 2.0);
  return {s2 * xi * xi / 2.0 + p.lambda * (1.0 - e) - I * p.mu * xi,
          s2 * xi - p.lambda * (I * p.m - p.s * p.s * xi) * e - I * p.mu};
}

PsiPair eval(const Hejd& p, cplx xi, int) {
  const double s2 = p.sigma * p.sigma;
  cplx v = s2 * xi * xi / 2.0 - I * p.mu * xi;
  cplx d = s2 * xi - I * p.mu;
  for (const auto& t : p.pos_terms) {
    const cplx den = t.alpha - I * xi;
    if (den == 0.0) throw DomainError("psi: argument at a pole");
    v += t.p * (-I * xi) / den;
    d += t.p * (-I * t.alpha) / (den * den);
  }
  for (const auto& t : p.neg_terms) {
    const cplx den = t.alpha + I * xi;
    if (den == 0.0) throw DomainError("psi: argument at a pole");
    v += t.p * (I * xi) / den;
    d += t.p * (I * t.alpha) / (den * den);
  }
  return {v, d};
}

// alpha^2 - (beta + i xi)^2 with the cut branch fixed on the axis.
cplx quad_base(double alpha, double beta, cplx xi, int bank) {
  // factored so that the base vanishes exactly at the branch points
  const cplx ix = I * xi;
  cplx b = ((alpha - beta) - ix) * ((alpha + beta) + ix);
  if (xi.real() == 0 && bank != 0 && b.real() < 0) {
    b = pin(b, bank * (xi.imag() > beta ? 1 : -1));
  }
  return b;
}

PsiPair eval(const VarianceGamma& p, cplx xi, int bank) {
  const cplx b = quad_base(p.alpha, p.beta, xi, bank);
  const cplx db = -2.0 * I * (p.beta + I * xi);
  const double b0 = p.alpha * p.alpha - p.beta * p.beta;
  return {p.c * (std::log(b) - std::log(b0)) - I * p.mu * xi, p.c * db / b - I * p.mu};
}

PsiPair eval(const NormalTemperedStable& p, cplx xi, int bank) {
  const cplx b = quad_base(p.alpha, p.beta, xi, bank);
  const cplx db = -2.0 * I * (p.beta + I * xi);
  const double b0 = p.alpha * p.alpha - p.beta * p.beta;
  const double h = p.nu / 2;
  const cplx pw = std::pow(b, h - 1);
  return {p.delta * (std::pow(b, h) - std::pow(b0, h)) - I * p.mu * xi,
          p.delta * h * pw * db - I * p.mu};
}

PsiPair eval(const KoBoL& p, cplx xi, int bank) {
  const double lp = -p.lambda_minus;
  const double lm = p.lambda_plus;
  cplx bp = lp - I * xi;
  cplx bm = lm + I * xi;
  if (xi.real() == 0) {
    if (bp.real() < 0) bp = pin(bp, -bank);
    if (bm.real() < 0) bm = pin(bm, bank);
  }
  const PsiPair tp = kobol_term(p.c_plus, p.nu_plus, lp, bp);
  const PsiPair tm = kobol_term(p.c_minus, p.nu_minus, lm, bm);
  return {tp.value + tm.value - I * p.mu * xi, -I * tp.deriv + I * tm.deriv - I * p.mu};
}

PsiPair eval(const Meixner& p, cplx xi, int bank) {
  const cplx z = (p.a * xi - I * p.b) / 2.0;
  const bool right = xi.real() > 0 || (xi.real() == 0 && bank >= 0);
  cplx lc, th;
  if (right) {
    const cplx e = std::exp(-2.0 * z);
    lc = z + std::log(1.0 + e) - std::log(2.0);
    th = (1.0 - e) / (1.0 + e);
  } else {
    const cplx e = std::exp(2.0 * z);
    lc = -z + std::log(1.0 + e) - std::log(2.0);
    th = (e - 1.0) / (e + 1.0);
  }
  return {2 * p.delta * (lc - std::log(std::cos(p.b / 2))) - I * p.mu * xi,
          p.delta * p.a * th - I * p.mu};
}

}  // namespace

PsiPair psi_eval(const LevyModel& m, cplx xi, int bank) {
  return std::visit([&](const auto& p) { return eval(p, xi, bank); }, m.params());
}

}  // namespace detail

namespace {

void check_off_cut(const LevyModel& m, cplx xi) {
  if (xi.real() != 0 || m.family() == Family::HEJD) return;
  const auto& t = m.traits();
  if (xi.imag() <= t.strip_lo || xi.imag() >= t.strip_hi)
    throw DomainError("psi: argument lies on a branch cut; use psi_cut");
}

cplx cut_point(const LevyModel& m, CutSide side, double w) {
  const auto& t = m.traits();
  if (side == CutSide::Lower) {
    if (!std::isfinite(t.strip_lo)) throw DomainError("psi_cut: no lower cut");
    if (!(w >= -t.strip_lo)) throw DomainError("psi_cut: w lies inside the strip");
    return cplx(0.0, -w);
  }
  if (!std::isfinite(t.strip_hi)) throw DomainError("psi_cut: no upper cut");
  if (!(w >= t.strip_hi)) throw DomainError("psi_cut: w lies inside the strip");
  return cplx(0.0, w);
}

}  // namespace

cplx psi(const LevyModel& m, cplx xi) {
  check_off_cut(m, xi);
  return detail::psi_eval(m, xi, 0).value;
}

cplx psi_prime(const LevyModel& m, cplx xi) {
  check_off_cut(m, xi);
  return detail::psi_eval(m, xi, 0).deriv;
}

cplx psi_cut(const LevyModel& m, CutSide side, Bank bank, double w) {
  return detail::psi_eval(m, cut_point(m, side, w), bank == Bank::Plus ? 1 : -1).value;
}

cplx psi_prime_cut(const LevyModel& m, CutSide side, Bank bank, double w) {
  return detail::psi_eval(m, cut_point(m, side, w), bank == Bank::Plus ? 1 : -1).deriv;
}

double psi_second_at_zero(const LevyModel& m) { return m.traits().mu2; }

}  // namespace levywh
