#include "levywh/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "levywh/inversion.hpp"
#include "levywh/whf.hpp"

namespace levywh {

namespace {

PropertyCheck run(const std::string& name, double threshold, const std::function<double()>& f) {
  try {
    const double v = f();
    return {name, v < threshold, false, v, threshold, ""};
  } catch (const std::exception& e) {
    return {name, false, false, NAN, threshold, e.what()};
  }
}

PropertyCheck skip(const std::string& name, const std::string& why) {
  return {name, true, true, NAN, NAN, why};
}

std::vector<cplx> strip_points(const ModelTraits& tr) {
  const double lo = std::max(tr.strip_lo, -5.0), hi = std::min(tr.strip_hi, 5.0);
  std::vector<cplx> out;
  for (int k = 0; k < 20; ++k) {
    const double re = -15.0 + 30.0 * ((k * 7) % 20) / 19.0;
    const double im = lo + (hi - lo) * (0.05 + 0.9 * ((k * 13) % 20) / 19.0);
    out.emplace_back(re, im);
  }
  return out;
}

}  // namespace

std::vector<PropertyCheck> validate_model(const LevyModel& m) {
  const auto& tr = m.traits();
  std::vector<PropertyCheck> out;

  out.push_back(run("psi_zero_at_origin", 1e-12, [&] { return std::abs(psi(m, 0.0)); }));

  out.push_back(run("psi_conjugate_symmetry", 1e-10, [&] {
    double worst = 0.0;
    for (const cplx& z : strip_points(tr))
      worst = std::max(worst, std::abs(psi(m, -std::conj(z)) - std::conj(psi(m, z))) /
                                  (1 + std::abs(psi(m, z))));
    return worst;
  }));

  out.push_back(run("psi_prime_finite_difference", 1e-6, [&] {
    double worst = 0.0;
    for (const cplx& z : strip_points(tr)) {
      const double h = 1e-6 * (1 + std::abs(z));
      const cplx fd = (psi(m, z + h) - psi(m, z - h)) / (2 * h);
      const cplx d = psi_prime(m, z);
      worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
    }
    return worst;
  }));

  out.push_back(run("wiener_hopf_identity", 1e-7, [&] {
    double worst = 0.0;
    for (double q : {0.1, 1.0, 10.0})
      for (int k = 0; k < 11; ++k) {
        const double x = -20.0 + 4.0 * k;
        const cplx lhs = q / (q + psi(m, x));
        const cplx rhs = phi_plus(m, q, x).value * phi_minus(m, q, x).value;
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    return worst;
  }));

  if (tr.sl_kind == SLKind::SL) {
    out.push_back(run("representations_agree", 1e-6, [&] {
      double worst = 0.0;
      for (double q : {0.5, 2.0})
        for (double x : {-4.0, 0.5, 3.0}) {
          const cplx d = phi_plus_direct(m, q, x).value;
          worst = std::max(worst, std::abs(phi_plus_sl(m, q, x).value - d) / std::abs(d));
          const cplx dm = phi_minus_direct(m, q, x).value;
          worst = std::max(worst, std::abs(phi_minus_sl(m, q, x).value - dm) / std::abs(dm));
        }
      return worst;
    }));
  } else {
    out.push_back(skip("representations_agree", "model is not SL"));
  }

  out.push_back(run("factor_modulus_at_most_one", 1e-9, [&] {
    double worst = 0.0;
    for (double x : {-10.0, -1.0, 0.3, 4.0})
      worst = std::max({worst, std::abs(phi_plus(m, 0.5, x).value) - 1,
                        std::abs(phi_minus(m, 0.5, x).value) - 1});
    return std::max(worst, 0.0);
  }));

  out.push_back(run("survival_in_unit_interval_and_increasing", 1e-6, [&] {
    const std::vector<double> xs{0.25, 0.5, 1.0, 2.0};
    const auto r = survival_grid(m, 1.0, xs);
    double worst = 0.0, prev = 0.0;
    for (const auto& v : r) {
      worst = std::max({worst, -v.value, v.value - 1, prev - v.value});
      prev = v.value;
    }
    return std::max(worst, 0.0);
  }));

  if (tr.nu_plus > 0) {
    out.push_back(run("unit_integral", 1e-6,
                      [&] { return std::abs(unit_integral_check(m, 1.0).value - 1); }));
  } else {
    out.push_back(skip("unit_integral", "nu_plus = 0"));
  }
  return out;
}

}  // namespace levywh
