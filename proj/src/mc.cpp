#include "levywh/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levywh/contour.hpp"
#include "levywh/errors.hpp"
#include "model_eval.hpp"
#include "parallel.hpp"

namespace levywh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTail = 1e-11;
const cplx I(0.0, 1.0);

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double lower_end(const LevyModel& m) {
  if (m.family() == Family::HEJD) {
    const auto p = axis_poles(m);
    return p.lower.empty() ? INFINITY : p.lower.front();
  }
  return -m.traits().strip_lo;
}

double upper_end(const LevyModel& m) {
  if (m.family() == Family::HEJD) {
    const auto p = axis_poles(m);
    return p.upper.empty() ? INFINITY : p.upper.front();
  }
  return m.traits().strip_hi;
}

struct CdfEval {
  const LevyModel& m;
  double dt;
  double omega_dn, omega_up;
  double tol;
  int evals = 0;

  // P[X_dt <= y], y != 0: for y > 0 the line below the origin gives 1 - I,
  // for y < 0 the line above gives -I, I = (1/2pi) \int e^{-i xi y - dt psi} / (i xi).
  double operator()(double y) {
    Cone c;
    c.dir = y > 0 ? -1 : 1;
    c.omega = y > 0 ? omega_dn : omega_up;
    c.scale = std::abs(c.omega);
    c.r_max = std::max(1e3, 45.0 / (std::abs(y) * std::sin(c.gamma)));
    auto f = [&](cplx xi) {
      return std::exp(-I * xi * y - dt * detail::psi_eval(m, xi, 0).value) / (I * xi);
    };
    const auto r = cone_integral(f, c, tol * 2 * kPi);
    evals += r.evaluations;
    const double v = r.value.real() / (2 * kPi);
    return y > 0 ? 1 - v : -v;
  }
};

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t path, std::uint64_t step) {
  const std::uint64_t key = mix(seed ^ mix(path + 0x632BE59BD9B4E019ULL));
  const std::uint64_t z = mix(key + (step + 1) * 0x9E3779B97F4A7C15ULL);
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

double CdfTable::sample(double u) const {
  const std::size_t n = prob.size();
  if (u <= prob.front()) return value.front();
  if (u >= prob.back()) return value.back();
  std::size_t j = guide_[std::min<std::size_t>(guide_.size() - 1,
                                               static_cast<std::size_t>(u * guide_.size()))];
  while (j + 1 < n && prob[j + 1] <= u) ++j;
  const double dp = prob[j + 1] - prob[j];
  if (!(dp > 0)) return value[j];
  return value[j] + (u - prob[j]) / dp * (value[j + 1] - value[j]);
}

double CdfTable::cdf(double y) const {
  if (y <= value.front()) return y < value.front() ? 0.0 : prob.front();
  if (y >= value.back()) return 1.0;
  const auto it = std::upper_bound(value.begin(), value.end(), y);
  const std::size_t j = static_cast<std::size_t>(it - value.begin()) - 1;
  return prob[j] + (y - value[j]) / (value[j + 1] - value[j]) * (prob[j + 1] - prob[j]);
}

CdfTable increment_cdf_table(const LevyModel& m, double dt, int cdf_grid) {
  if (!(dt > 0)) throw DomainError("increment_cdf_table: dt must be > 0");
  if (cdf_grid < 16) throw ParameterError("cdf_grid", "cdf_grid must be >= 16");
  const auto& tr = m.traits();
  CdfEval F{m, dt, -0.5 * std::min(lower_end(m), 2.0), 0.5 * std::min(upper_end(m), 2.0),
            1e-14};

  const double s0 = std::sqrt(tr.mu2 * dt) + std::abs(tr.mu1) * dt;
  double hi = s0, lo = s0;
  while (1 - F(hi) > kTail) {
    hi *= 2;
    if (hi > 1e4) throw ConvergenceError("increment_cdf_table: upper tail not reached", hi);
  }
  while (F(-lo) > kTail) {
    lo *= 2;
    if (lo > 1e4) throw ConvergenceError("increment_cdf_table: lower tail not reached", lo);
  }

  // geometric from the origin outwards
  struct Node {
    double y, p;
  };
  std::vector<Node> nodes;
  const double tiny = 1e-10 * s0;
  const int per_side = std::max(8, cdf_grid / 4);
  for (int k = per_side; k >= 0; --k) {
    const double y = -tiny * std::pow(lo / tiny, static_cast<double>(k) / per_side);
    nodes.push_back({y, F(y)});
  }
  for (int k = 0; k <= per_side; ++k) {
    const double y = tiny * std::pow(hi / tiny, static_cast<double>(k) / per_side);
    nodes.push_back({y, F(y)});
  }
  // bisect until each cell holds at most 1/cdf_grid of the mass and the CDF is
  // linear across it to 1e-7
  const double cell = 1.0 / cdf_grid;
  const double lin_tol = 1e-7;
  const std::size_t cap = 64 * static_cast<std::size_t>(cdf_grid);
  std::vector<Node> out{nodes.front()};
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    // the cell around the origin stays whole: it may hold an unresolvable near-atom
    if (nodes[j - 1].y * nodes[j].y < 0) {
      out.push_back(nodes[j]);
      continue;
    }
    std::vector<Node> stack{nodes[j]};
    while (!stack.empty()) {
      const Node a = out.back(), b = stack.back();
      double y = 0.5 * (a.y + b.y);
      if (b.y / a.y > 2) y = std::copysign(std::sqrt(a.y * b.y), a.y);
      if (y == a.y || y == b.y || out.size() + stack.size() > cap) {
        out.push_back(b);
        stack.pop_back();
        continue;
      }
      const Node m{y, F(y)};
      const double lin = a.p + (b.p - a.p) * (y - a.y) / (b.y - a.y);
      if (std::abs(b.p - a.p) > cell || std::abs(m.p - lin) > lin_tol) {
        stack.push_back(m);
      } else {
        out.push_back(m);
        out.push_back(b);
        stack.pop_back();
      }
    }
  }
  nodes = std::move(out);

  CdfTable t;
  t.dt = dt;
  double run = 0.0;
  for (const Node& n : nodes) {
    const double p = std::clamp(n.p, 0.0, 1.0);
    t.max_violation = std::max(t.max_violation, run - n.p);
    run = std::max(run, p);
    t.value.push_back(n.y);
    t.prob.push_back(run);
  }
  if (t.max_violation > 1e-6)
    throw ConvergenceError("increment CDF is not monotone", t.max_violation);
  t.evaluations = F.evals;

  const std::size_t n = t.prob.size();
  t.mean = t.prob.front() * t.value.front() + (1 - t.prob.back()) * t.value.back();
  for (std::size_t j = 0; j + 1 < n; ++j)
    t.mean += (t.prob[j + 1] - t.prob[j]) * 0.5 * (t.value[j] + t.value[j + 1]);
  // interpolation error in the tails moves the mean slightly; over thousands of
  // steps that would act as a spurious drift
  t.mean_shift = tr.mu1 * dt - t.mean;
  for (double& v : t.value) v += t.mean_shift;
  t.mean += t.mean_shift;

  t.guide_.resize(4 * n);
  std::size_t j = 0;
  for (std::size_t k = 0; k < t.guide_.size(); ++k) {
    const double u = static_cast<double>(k) / t.guide_.size();
    while (j + 2 < n && t.prob[j + 1] <= u) ++j;
    t.guide_[k] = static_cast<std::uint32_t>(j);
  }
  return t;
}

double bias_allowance(const LevyModel& m, double t, int n_steps) {
  const double dt = t / n_steps;
  const double mu2 = m.traits().mu2;
  return 0.5826 * std::sqrt(mu2 * dt) * std::sqrt(2 / (kPi * mu2 * t));
}

std::vector<McResult> simulate_sup_grid(const LevyModel& m, double t,
                                        const std::vector<double>& xs, const McConfig& cfg) {
  if (!(t > 0)) throw DomainError("simulate_sup: t must be > 0");
  if (cfg.n_steps < 100) throw ParameterError("n_steps", "n_steps must be >= 100");
  if (cfg.n_paths < 10000) throw ParameterError("n_paths", "n_paths must be >= 10000");
  const CdfTable table = increment_cdf_table(m, t / cfg.n_steps, cfg.cdf_grid);

  const std::size_t block = 1000;
  const std::size_t n_paths = static_cast<std::size_t>(cfg.n_paths);
  const std::size_t n_blocks = (n_paths + block - 1) / block;
  std::vector<std::vector<long>> counts(n_blocks, std::vector<long>(xs.size(), 0));
  detail::parallel_for(n_blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n_paths, (b + 1) * block);
    for (std::size_t p = b * block; p < end; ++p) {
      double s = 0.0, mx = 0.0;
      for (int k = 0; k < cfg.n_steps; ++k) {
        s += table.sample(counter_uniform(cfg.seed, p, static_cast<std::uint64_t>(k)));
        mx = std::max(mx, s);
      }
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (mx < xs[i]) ++counts[b][i];
    }
  });

  std::vector<McResult> out;
  const double bias = bias_allowance(m, t, cfg.n_steps);
  const double order = std::pow(cfg.n_steps, -1 / std::max(m.traits().nu, 1.0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    long c = 0;
    for (const auto& v : counts) c += v[i];
    const double p = static_cast<double>(c) / n_paths;
    out.push_back({p, std::sqrt(p * (1 - p) / n_paths), bias, order, cfg.n_steps, cfg.n_paths});
  }
  return out;
}

McResult simulate_sup(const LevyModel& m, double t, double x, const McConfig& cfg) {
  return simulate_sup_grid(m, t, {x}, cfg).front();
}

}  // namespace levywh
