#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "levywh/asymptotics.hpp"
#include "levywh/inversion.hpp"
#include "levywh/mc.hpp"
#include "levywh/model_json.hpp"
#include "levywh/roots.hpp"
#include "levywh/slmeasure.hpp"
#include "levywh/validate.hpp"
#include "levywh/whf.hpp"

using namespace levywh;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Args {
  std::string model_path;
  std::string out;
  double tol = NAN;
  std::vector<double> t, x, q, xi;
  int k = 0;
  std::uint64_t seed = McConfig{}.seed;
  int n_paths = McConfig{}.n_paths;
  int n_steps = McConfig{}.n_steps;
  std::string log_level = "warn";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  json provenance = json::object();  // column -> what produced it
  json diagnostics = json::array();
};

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_outputs(const Table& tab, const Args& a, const std::string& command, const json& model) {
  for (const auto& r : tab.rows)
    for (double v : r)
      if (!std::isfinite(v)) throw SanityError("non-finite value in output table");
  std::ostringstream csv;
  for (std::size_t i = 0; i < tab.columns.size(); ++i) csv << (i ? "," : "") << tab.columns[i];
  csv << "\n";
  for (const auto& r : tab.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << cell(r[i]);
    csv << "\n";
  }
  json side = {{"command", command},     {"library_version", kVersion},
               {"model", model},         {"columns", tab.columns},
               {"provenance", tab.provenance}, {"diagnostics", tab.diagnostics}};
  if (a.out.empty()) {
    std::cout << csv.str();
    if (a.log_level == "debug") std::cerr << side.dump(2) << "\n";
    return;
  }
  std::ofstream(a.out) << csv.str();
  std::ofstream(a.out + ".json") << side.dump(2) << "\n";
}

std::vector<double> need(const std::vector<double>& v, const char* flag) {
  if (v.empty()) throw ParameterError(flag, std::string("missing ") + flag);
  return v;
}

double tol_or(const Args& a, double d) { return std::isnan(a.tol) ? d : a.tol; }

Table cmd_psi(const LevyModel& m, const Args& a) {
  Table t{{"xi", "psi_re", "psi_im", "dpsi_re", "dpsi_im"}};
  for (double x : need(a.xi, "--xi")) {
    const cplx v = psi(m, x), d = psi_prime(m, x);
    t.rows.push_back({x, v.real(), v.imag(), d.real(), d.imag()});
  }
  t.provenance = {{"psi", "characteristic exponent, closed form"},
                  {"dpsi", "derivative of the exponent, closed form"}};
  return t;
}

Table cmd_slm(const LevyModel& m, const Args& a) {
  Table t{{"x", "sl_density_plus", "sl_density_minus", "levy_density_pos", "levy_density_neg"}};
  const double tol = tol_or(a, 1e-12);
  for (double x : need(a.x, "--x")) {
    if (!(x > 0)) throw DomainError("slm: points must be > 0");
    auto dens = [&](MeasureSide s) {
      const auto info = sl_info(m, s);
      return x > info.support_start ? sl_density(m, s, x) : 0.0;
    };
    t.rows.push_back({x, dens(MeasureSide::Plus), dens(MeasureSide::Minus),
                      levy_density_reconstruct(m, x, tol), levy_density_reconstruct(m, -x, tol)});
  }
  t.provenance = {{"sl_density", "imaginary part of the exponent on the cuts"},
                  {"levy_density", "Laplace transform of the SL measure"}};
  return t;
}

Table cmd_zeros(const LevyModel& m, const Args& a) {
  Table t{{"q", "beta", "multiplicity"}};
  for (double q : need(a.q, "--q")) {
    const ZeroSet zs = find_axis_zeros(m, q);
    for (const auto& z : zs.zeros) t.rows.push_back({q, z.beta, static_cast<double>(z.multiplicity)});
    t.diagnostics.push_back({{"q", q}, {"complete", zs.complete}, {"boundary_warning", zs.boundary_warning}});
  }
  t.provenance = {{"beta", "zeros of q + psi(-i beta) on the imaginary axis"}};
  return t;
}

Table cmd_wh(const LevyModel& m, const Args& a) {
  Table t{{"q", "xi_re", "xi_im", "phi_plus_re", "phi_plus_im", "phi_minus_re", "phi_minus_im",
           "identity_residual"}};
  WHOptions opt;
  opt.tol = tol_or(a, opt.tol);
  for (double q : need(a.q, "--q"))
    for (double x : need(a.xi, "--xi")) {
      const WHEval p = phi_plus(m, q, x, opt), n = phi_minus(m, q, x, opt);
      const double res = std::abs(p.value * n.value * (q + psi(m, x)) / q - 1.0);
      t.rows.push_back({q, x, 0.0, p.value.real(), p.value.imag(), n.value.real(), n.value.imag(), res});
      t.diagnostics.push_back({{"q", q},
                               {"xi", x},
                               {"plus_contour", std::isnan(p.contour_param) ? json() : json(p.contour_param)},
                               {"minus_contour", std::isnan(n.contour_param) ? json() : json(n.contour_param)},
                               {"plus_error", p.quad_error},
                               {"minus_error", n.quad_error}});
    }
  t.provenance = {{"phi_plus", "Wiener-Hopf factor, line-integral representation"},
                  {"phi_minus", "Wiener-Hopf factor, line-integral representation"},
                  {"identity_residual", "|phi+ phi- (q + psi) / q - 1|"}};
  return t;
}

Table cmd_survival(const LevyModel& m, const Args& a) {
  Table t{{"t", "x", "P", "est_error", "n_nodes"}};
  InversionSpec spec;
  spec.tol = tol_or(a, spec.tol);
  for (double tt : need(a.t, "--t")) {
    const auto rs = survival_grid(m, tt, need(a.x, "--x"), spec);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      t.rows.push_back({tt, a.x[i], rs[i].value, rs[i].error, static_cast<double>(rs[i].n_nodes)});
      t.diagnostics.push_back({{"t", tt}, {"x", a.x[i]}, {"sigma0", rs[i].sigma0},
                               {"omega_minus", rs[i].omega_minus}});
    }
  }
  t.provenance = {{"P", "Euler-accelerated Bromwich inversion of the Wiener-Hopf double integral"}};
  return t;
}

Table cmd_mc(const LevyModel& m, const Args& a) {
  Table t{{"t", "x", "estimate", "std_err", "n_steps"}};
  McConfig cfg;
  cfg.seed = a.seed;
  cfg.n_paths = a.n_paths;
  cfg.n_steps = a.n_steps;
  for (double tt : need(a.t, "--t")) {
    const auto rs = simulate_sup_grid(m, tt, need(a.x, "--x"), cfg);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      t.rows.push_back({tt, a.x[i], rs[i].estimate, rs[i].std_err, static_cast<double>(rs[i].n_steps)});
      t.diagnostics.push_back({{"t", tt}, {"x", a.x[i]}, {"n_paths", rs[i].n_paths},
                               {"seed", cfg.seed}, {"bias_allowance", rs[i].bias_allowance},
                               {"bias_order", rs[i].bias_order}});
    }
  }
  t.provenance = {{"estimate", "discretely monitored random walk, inverse-CDF increments"}};
  return t;
}

Table cmd_asymp(const LevyModel& m, const Args& a) {
  Table t{{"t", "x", "coefficient", "approx", "P", "residual"}};
  const Regime reg = classify_regime(m);
  for (double tt : need(a.t, "--t")) {
    const auto ps = survival_grid(m, tt, need(a.x, "--x"));
    double kappa = NAN;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
      const double x = a.x[i];
      double coeff, approx;
      json diag;
      if (reg == Regime::DriftNeg) {
        const auto r = p_infinity(m, x);
        coeff = r.coefficient;
        approx = 1 - coeff;
        diag = r.diagnostics;
      } else if (reg == Regime::DriftZero) {
        const auto r = p_infinity_zero_drift(m, x);
        coeff = r.coefficient;
        approx = coeff / std::sqrt(tt);
        diag = r.diagnostics;
      } else {
        if (std::isnan(kappa)) kappa = lower_tail_coeff(m, tt, a.k).coefficient;
        coeff = kappa;
        approx = kappa * std::pow(x, m.traits().nu_plus);
      }
      t.rows.push_back({tt, x, coeff, approx, ps[i].value, ps[i].value - approx});
      t.diagnostics.push_back({{"t", tt}, {"x", x}, {"details", diag}});
    }
  }
  const std::string name(reg == Regime::DriftPos ? regime_name(Regime::LowerTail) : regime_name(reg));
  t.provenance = {{"regime", name},
                  {"coefficient", reg == Regime::DriftNeg    ? "p_inf(x), limit of P[sup X >= x]"
                                  : reg == Regime::DriftZero ? "p_inf0(x), coefficient of t^{-1/2}"
                                                             : "kappa(t), coefficient of x^{nu_+}"},
                  {"P", "inversion"}};
  return t;
}

int cmd_validate(const LevyModel& m, const Args& a) {
  const auto checks = validate_model(m);
  json rep = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    ok = ok && c.passed;
    rep.push_back({{"property", c.name},
                   {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"},
                   {"measure", std::isnan(c.measure) ? json() : json(c.measure)},
                   {"threshold", std::isnan(c.threshold) ? json() : json(c.threshold)},
                   {"detail", c.detail}});
  }
  const json doc = {{"command", "validate"}, {"library_version", kVersion},
                    {"model", model_to_json(m)}, {"passed", ok}, {"properties", rep}};
  if (a.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    std::ofstream(a.out) << doc.dump(2) << "\n";
  return ok ? 0 : 1;
}

void print_error(const std::string& kind, const std::string& field, const std::string& msg) {
  json e = {{"error", {{"kind", kind}, {"message", msg}}}};
  if (!field.empty()) e["error"]["field"] = field;
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener-Hopf factors and supremum distributions of Levy processes"};
  app.require_subcommand(1);
  Args a;
  const char* names[] = {"psi", "slm", "zeros", "wh", "survival", "mc", "asymp", "validate"};
  for (const char* n : names) {
    auto* sub = app.add_subcommand(n);
    sub->add_option("--model", a.model_path, "model JSON file")->required();
    sub->add_option("--out", a.out, "output path (CSV; diagnostics go to <out>.json)");
    sub->add_option("--tol", a.tol);
    sub->add_option("--t", a.t)->delimiter(',');
    sub->add_option("--x", a.x)->delimiter(',');
    sub->add_option("--q", a.q)->delimiter(',');
    sub->add_option("--xi", a.xi)->delimiter(',');
    sub->add_option("--k", a.k);
    sub->add_option("--seed", a.seed);
    sub->add_option("--n-paths", a.n_paths);
    sub->add_option("--n-steps", a.n_steps);
    sub->add_option("--log-level", a.log_level)->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("usage", "", e.what());
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  LevyModel model = [&] {
    try {
      return load_model(a.model_path);
    } catch (const ParameterError& e) {
      print_error("model", e.field(), e.what());
      std::exit(2);
    }
  }();

  try {
    if (cmd == "validate") return cmd_validate(model, a);
    Table t = cmd == "psi"        ? cmd_psi(model, a)
              : cmd == "slm"      ? cmd_slm(model, a)
              : cmd == "zeros"    ? cmd_zeros(model, a)
              : cmd == "wh"       ? cmd_wh(model, a)
              : cmd == "survival" ? cmd_survival(model, a)
              : cmd == "mc"       ? cmd_mc(model, a)
                                  : cmd_asymp(model, a);
    write_outputs(t, a, cmd, model_to_json(model));
  } catch (const ParameterError& e) {
    print_error(e.kind(), e.field(), e.what());
    return 3;
  } catch (const LevyError& e) {
    print_error(e.kind(), "", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("internal", "", e.what());
    return 4;
  }
  return 0;
}
