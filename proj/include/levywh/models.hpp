#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "levywh/errors.hpp"

namespace levywh {

using cplx = std::complex<double>;

struct BrownianDrift {
  double sigma2 = 1.0;
  double mu = 0.0;
};

struct Merton {
  double sigma = 0.0;
  double lambda = 0.0;
  double m = 0.0;
  double s = 0.0;
  double mu = 0.0;
};

struct HejdTerm {
  double p = 0.0;      // jump intensity of this exponential component
  double alpha = 0.0;  // rate
};

struct Hejd {
  double sigma = 0.0;
  double mu = 0.0;
  std::vector<HejdTerm> pos_terms;
  std::vector<HejdTerm> neg_terms;
};

struct VarianceGamma {
  double c = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double mu = 0.0;
};

struct NormalTemperedStable {
  double delta = 1.0;
  double nu = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double mu = 0.0;
};

/// Two-sided tempered stable. Orders may be 0 (log form) or 1 (x log x form).
struct KoBoL {
  double nu_plus = 0.5;
  double nu_minus = 0.5;
  double c_plus = 1.0;
  double c_minus = 1.0;
  double lambda_minus = -1.0;
  double lambda_plus = 1.0;
  double mu = 0.0;
};

struct Meixner {
  double delta = 1.0;
  double a = 1.0;
  double b = 0.0;
  double mu = 0.0;
};

enum class Family { BM, Merton, HEJD, VG, NTS, KoBoL, Meixner };

enum class SLKind { SL, sSL, NotSL };

/// Growth of the exponent at infinity.
enum class OrderKind {
  Bounded,     // compound Poisson, no diffusion
  ZeroPlus,    // logarithmic growth
  Fractional,  // |xi|^nu with 0 < nu < 2, nu != 1
  OnePlus,     // xi log xi
  Two          // Gaussian component
};

/// Which of the three leading-asymptotics cases the model falls into.
enum class AsymptoticCase { A, B, C, None };

struct ModelTraits {
  double strip_lo = 0.0;  // mu_-
  double strip_hi = 0.0;  // mu_+
  OrderKind order_kind = OrderKind::Two;
  double nu = 2.0;
  double nu_plus = 1.0;
  double nu_minus = 1.0;
  AsymptoticCase asym_case = AsymptoticCase::A;
  double c_inf = 0.0;    // |c| in psi ~ c e^{+-i phi}|xi|^nu
  double phi_inf = 0.0;  // phi
  SLKind sl_kind = SLKind::SL;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

class LevyModel {
 public:
  using Params = std::variant<BrownianDrift, Merton, Hejd, VarianceGamma,
                              NormalTemperedStable, KoBoL, Meixner>;

  /// Validates parameters; throws ParameterError naming the field.
  explicit LevyModel(Params p);

  const Params& params() const { return params_; }
  Family family() const;
  std::string_view family_name() const;
  const ModelTraits& traits() const { return traits_; }
  double drift() const;

  template <class T>
  const T& as() const { return std::get<T>(params_); }

 private:
  Params params_;
  ModelTraits traits_;
};

/// Side of the imaginary axis from which a cut value is taken: Plus is Re xi = +0.
enum class Bank { Plus, Minus };
/// Which cut: Lower is -i[w0, inf) with w0 = -mu_-, Upper is i[mu_+, inf).
enum class CutSide { Lower, Upper };

cplx psi(const LevyModel& m, cplx xi);
cplx psi_prime(const LevyModel& m, cplx xi);

/// psi(-i w +- 0) on the lower cut or psi(i w +- 0) on the upper cut.
cplx psi_cut(const LevyModel& m, CutSide side, Bank bank, double w);
cplx psi_prime_cut(const LevyModel& m, CutSide side, Bank bank, double w);

/// psi''(0), equal to the variance mu2.
double psi_second_at_zero(const LevyModel& m);

const ModelTraits& traits(const LevyModel& m);

/// Poles of psi on the imaginary axis (HEJD only): xi = -i alpha_j^+ and i alpha_k^-.
/// Returned as the lists of alpha_j^+ and alpha_k^- (sorted ascending).
struct AxisPoles {
  std::vector<double> lower;
  std::vector<double> upper;
};
AxisPoles axis_poles(const LevyModel& m);

}  // namespace levywh
