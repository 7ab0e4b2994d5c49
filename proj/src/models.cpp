#include "levywh/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "model_eval.hpp"

namespace levywh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* field, const std::string& msg) {
  if (!ok) throw ParameterError(field, std::string(field) + ": " + msg);
}

bool finite(double v) { return std::isfinite(v); }

void validate(const BrownianDrift& p) {
  require(finite(p.sigma2) && p.sigma2 >= 0, "sigma2", "must be finite and >= 0");
  require(finite(p.mu), "mu", "must be finite");
}

void validate(const Merton& p) {
  require(finite(p.sigma) && p.sigma >= 0, "sigma", "must be finite and >= 0");
  require(finite(p.lambda) && p.lambda >= 0, "lambda", "must be finite and >= 0");
  require(finite(p.m), "m", "must be finite");
  require(finite(p.s) && p.s >= 0, "s", "must be finite and >= 0");
  require(finite(p.mu), "mu", "must be finite");
}

void validate_terms(const std::vector<HejdTerm>& terms, const char* field) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    require(finite(terms[i].p) && terms[i].p > 0, field, "p must be > 0");
    require(finite(terms[i].alpha) && terms[i].alpha > 0, field, "alpha must be > 0");
    for (std::size_t j = 0; j < i; ++j)
      require(terms[i].alpha != terms[j].alpha, field, "rates must be distinct");
  }
}

void validate(const Hejd& p) {
  require(finite(p.sigma) && p.sigma >= 0, "sigma", "must be finite and >= 0");
  require(finite(p.mu), "mu", "must be finite");
  validate_terms(p.pos_terms, "pos_terms");
  validate_terms(p.neg_terms, "neg_terms");
}

void validate(const VarianceGamma& p) {
  require(finite(p.c) && p.c > 0, "c", "must be > 0");
  require(finite(p.alpha) && p.alpha > 0, "alpha", "must be > 0");
  require(finite(p.beta) && std::abs(p.beta) < p.alpha, "beta", "must satisfy |beta| < alpha");
  require(finite(p.mu), "mu", "must be finite");
}

void validate(const NormalTemperedStable& p) {
  require(finite(p.delta) && p.delta > 0, "delta", "must be > 0");
  require(finite(p.nu) && p.nu > 0 && p.nu < 2, "nu", "must lie in (0, 2)");
  require(finite(p.alpha) && p.alpha > 0, "alpha", "must be > 0");
  require(finite(p.beta) && std::abs(p.beta) < p.alpha, "beta", "must satisfy |beta| < alpha");
  require(finite(p.mu), "mu", "must be finite");
}

void validate(const KoBoL& p) {
  require(finite(p.nu_plus) && p.nu_plus >= 0 && p.nu_plus < 2, "nu_plus", "must lie in [0, 2)");
  require(finite(p.nu_minus) && p.nu_minus >= 0 && p.nu_minus < 2, "nu_minus",
          "must lie in [0, 2)");
  require(finite(p.c_plus) && p.c_plus >= 0, "c_plus", "must be >= 0");
  require(finite(p.c_minus) && p.c_minus >= 0, "c_minus", "must be >= 0");
  require(p.c_plus + p.c_minus > 0, "c_plus", "c_plus and c_minus cannot both vanish");
  require(finite(p.lambda_minus) && p.lambda_minus < 0, "lambda_minus", "must be < 0");
  require(finite(p.lambda_plus) && p.lambda_plus > 0, "lambda_plus", "must be > 0");
  require(finite(p.mu), "mu", "must be finite");
}

void validate(const Meixner& p) {
  require(finite(p.delta) && p.delta > 0, "delta", "must be > 0");
  require(finite(p.a) && p.a > 0, "a", "must be > 0");
  require(finite(p.b) && std::abs(p.b) < kPi, "b", "must satisfy |b| < pi");
  require(finite(p.mu), "mu", "must be finite");
}

// Leading behaviour is a pure drift: Case (b) or (c), or no asymptotic case at all.
void drift_dominated(ModelTraits& t, double mu) {
  t.nu = std::min(t.nu, 1.0);
  if (mu > 0) {
    t.asym_case = AsymptoticCase::B;
    t.nu_plus = 1.0;
    t.nu_minus = 0.0;
    t.c_inf = mu;
    t.phi_inf = -kPi / 2;
  } else if (mu < 0) {
    t.asym_case = AsymptoticCase::C;
    t.nu_plus = 0.0;
    t.nu_minus = 1.0;
    t.c_inf = -mu;
    t.phi_inf = kPi / 2;
  } else {
    t.asym_case = AsymptoticCase::None;
    t.nu_plus = 0.0;
    t.nu_minus = 0.0;
  }
}

// psi ~ coef * xi^nu as xi -> +inf.
void power_case(ModelTraits& t, double nu, cplx coef) {
  t.asym_case = AsymptoticCase::A;
  t.nu = nu;
  t.c_inf = std::abs(coef);
  t.phi_inf = std::arg(coef);
  t.nu_plus = nu / 2 - t.phi_inf / kPi;
  t.nu_minus = nu / 2 + t.phi_inf / kPi;
}

ModelTraits make_traits(const BrownianDrift& p) {
  ModelTraits t;
  t.strip_lo = -kInf;
  t.strip_hi = kInf;
  t.sl_kind = SLKind::SL;
  t.mu1 = p.mu;
  t.mu2 = p.sigma2;
  if (p.sigma2 > 0) {
    t.order_kind = OrderKind::Two;
    power_case(t, 2.0, cplx(p.sigma2 / 2, 0));
  } else {
    t.order_kind = OrderKind::Bounded;
    t.nu = 0.0;
    drift_dominated(t, p.mu);
  }
  return t;
}

ModelTraits make_traits(const Merton& p) {
  ModelTraits t;
  t.strip_lo = -kInf;
  t.strip_hi = kInf;
  t.sl_kind = SLKind::NotSL;
  t.mu1 = p.mu + p.lambda * p.m;
  t.mu2 = p.sigma * p.sigma + p.lambda * (p.s * p.s + p.m * p.m);
  if (p.sigma > 0) {
    t.order_kind = OrderKind::Two;
    power_case(t, 2.0, cplx(p.sigma * p.sigma / 2, 0));
  } else {
    t.order_kind = OrderKind::Bounded;
    t.nu = 0.0;
    drift_dominated(t, p.mu);
  }
  return t;
}

ModelTraits make_traits(const Hejd& p) {
  ModelTraits t;
  t.strip_lo = -kInf;
  t.strip_hi = kInf;
  for (const auto& term : p.pos_terms) t.strip_lo = std::max(t.strip_lo, -term.alpha);
  for (const auto& term : p.neg_terms) t.strip_hi = std::min(t.strip_hi, term.alpha);
  t.sl_kind = SLKind::SL;
  t.mu1 = p.mu;
  t.mu2 = p.sigma * p.sigma;
  for (const auto& term : p.pos_terms) {
    t.mu1 += term.p / term.alpha;
    t.mu2 += 2 * term.p / (term.alpha * term.alpha);
  }
  for (const auto& term : p.neg_terms) {
    t.mu1 -= term.p / term.alpha;
    t.mu2 += 2 * term.p / (term.alpha * term.alpha);
  }
  if (p.sigma > 0) {
    t.order_kind = OrderKind::Two;
    power_case(t, 2.0, cplx(p.sigma * p.sigma / 2, 0));
  } else {
    t.order_kind = OrderKind::Bounded;
    t.nu = 0.0;
    drift_dominated(t, p.mu);
  }
  return t;
}

ModelTraits make_traits(const VarianceGamma& p) {
  ModelTraits t;
  t.strip_lo = p.beta - p.alpha;
  t.strip_hi = p.beta + p.alpha;
  t.sl_kind = SLKind::SL;
  const double d = p.alpha * p.alpha - p.beta * p.beta;
  t.mu1 = p.mu + 2 * p.c * p.beta / d;
  t.mu2 = p.c * (2 / d + 4 * p.beta * p.beta / (d * d));
  t.order_kind = OrderKind::ZeroPlus;
  t.nu = 0.0;
  drift_dominated(t, p.mu);
  return t;
}

ModelTraits make_traits(const NormalTemperedStable& p) {
  ModelTraits t;
  t.strip_lo = p.beta - p.alpha;
  t.strip_hi = p.beta + p.alpha;
  t.sl_kind = SLKind::SL;
  const double d = p.alpha * p.alpha - p.beta * p.beta;
  t.mu1 = p.mu + p.delta * p.nu * p.beta * std::pow(d, p.nu / 2 - 1);
  t.mu2 = p.delta * p.nu * std::pow(d, p.nu / 2 - 2) * (d + (2 - p.nu) * p.beta * p.beta);
  t.order_kind = OrderKind::Fractional;
  if (p.nu < 1 && p.mu != 0) {
    t.nu = p.nu;
    drift_dominated(t, p.mu);
  } else {
    cplx coef(p.delta, 0);
    if (p.nu == 1) coef -= cplx(0, p.mu);
    power_case(t, p.nu, coef);
  }
  return t;
}

double kobol_side_mean(double c, double nu, double lam) {
  if (c == 0) return 0.0;
  if (nu == 0) return c / lam;
  if (nu == 1) return 0.0;
  return -c * std::tgamma(-nu) * nu * std::pow(lam, nu - 1);
}

double kobol_side_var(double c, double nu, double lam) {
  if (c == 0) return 0.0;
  if (nu == 0) return c / (lam * lam);
  if (nu == 1) return c / lam;
  return c * std::tgamma(-nu) * nu * (nu - 1) * std::pow(lam, nu - 2);
}

ModelTraits make_traits(const KoBoL& p) {
  ModelTraits t;
  const double lp = -p.lambda_minus;
  const double lm = p.lambda_plus;
  t.strip_lo = p.c_plus > 0 ? p.lambda_minus : -kInf;
  t.strip_hi = p.c_minus > 0 ? p.lambda_plus : kInf;
  t.sl_kind = SLKind::SL;
  t.mu1 = p.mu + kobol_side_mean(p.c_plus, p.nu_plus, lp) -
          kobol_side_mean(p.c_minus, p.nu_minus, lm);
  t.mu2 = kobol_side_var(p.c_plus, p.nu_plus, lp) + kobol_side_var(p.c_minus, p.nu_minus, lm);

  const double np = p.c_plus > 0 ? p.nu_plus : -1.0;
  const double nm = p.c_minus > 0 ? p.nu_minus : -1.0;
  const double nu = std::max(np, nm);
  if (nu == 0) {
    t.order_kind = OrderKind::ZeroPlus;
    t.nu = 0.0;
    drift_dominated(t, p.mu);
  } else if (nu == 1) {
    t.order_kind = OrderKind::OnePlus;
    t.nu = 1.0;
    t.asym_case = AsymptoticCase::None;
    // xi log xi terms: i (c_+ - c_-) xi log xi dominates unless the weights agree.
    const double cp = np == 1 ? p.c_plus : 0.0;
    const double cm = nm == 1 ? p.c_minus : 0.0;
    t.c_inf = std::abs(cp - cm);
    if (cp == cm) {
      t.phi_inf = 0;
      t.nu_plus = t.nu_minus = 0.5;
      t.c_inf = kPi * cp;
    } else if (cp > cm) {
      t.phi_inf = kPi / 2;
      t.nu_plus = 0.0;
      t.nu_minus = 1.0;
    } else {
      t.phi_inf = -kPi / 2;
      t.nu_plus = 1.0;
      t.nu_minus = 0.0;
    }
  } else {
    t.order_kind = OrderKind::Fractional;
    if (nu < 1 && p.mu != 0) {
      t.nu = nu;
      drift_dominated(t, p.mu);
    } else {
      const double g = std::tgamma(-nu);
      cplx coef(0, 0);
      if (np == nu) coef += -p.c_plus * g * std::polar(1.0, -kPi * nu / 2);
      if (nm == nu) coef += -p.c_minus * g * std::polar(1.0, kPi * nu / 2);
      power_case(t, nu, coef);
    }
  }
  return t;
}

ModelTraits make_traits(const Meixner& p) {
  ModelTraits t;
  t.strip_lo = (-kPi + p.b) / p.a;
  t.strip_hi = (kPi + p.b) / p.a;
  t.sl_kind = SLKind::sSL;
  const double cb = std::cos(p.b / 2);
  t.mu1 = p.mu + p.delta * p.a * std::tan(p.b / 2);
  t.mu2 = p.delta * p.a * p.a / (2 * cb * cb);
  t.order_kind = OrderKind::Fractional;
  power_case(t, 1.0, cplx(p.a * p.delta, -p.mu));
  return t;
}

}  // namespace

LevyModel::LevyModel(Params p) : params_(std::move(p)) {
  std::visit([](const auto& v) { validate(v); }, params_);
  traits_ = std::visit([](const auto& v) { return make_traits(v); }, params_);
}

Family LevyModel::family() const {
  static constexpr Family kOrder[] = {Family::BM,  Family::Merton, Family::HEJD,   Family::VG,
                                      Family::NTS, Family::KoBoL,  Family::Meixner};
  return kOrder[params_.index()];
}

std::string_view LevyModel::family_name() const {
  static constexpr std::string_view kNames[] = {"bm",  "merton", "hejd",   "vg",
                                                "nts", "kobol",  "meixner"};
  return kNames[params_.index()];
}

double LevyModel::drift() const {
  return std::visit([](const auto& v) { return v.mu; }, params_);
}

const ModelTraits& traits(const LevyModel& m) { return m.traits(); }

AxisPoles axis_poles(const LevyModel& m) {
  AxisPoles poles;
  if (m.family() != Family::HEJD) return poles;
  const auto& h = m.as<Hejd>();
  for (const auto& t : h.pos_terms) poles.lower.push_back(t.alpha);
  for (const auto& t : h.neg_terms) poles.upper.push_back(t.alpha);
  std::sort(poles.lower.begin(), poles.lower.end());
  std::sort(poles.upper.begin(), poles.upper.end());
  return poles;
}

}  // namespace levywh
