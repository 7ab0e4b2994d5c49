#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <queue>
#include <vector>

#include "levywh/errors.hpp"

namespace levywh {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T, class F>
void gk15(F& f, double a, double b, T& kron, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T k = fc * kWgk[7];
  T g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T s = f(c - dx) + f(c + dx);
    k += s * kWgk[j];
    if (j % 2 == 1) g += s * kWg[j / 2];
  }
  kron = k * h;
  err = std::abs((k - g) * h);
  if (!std::isfinite(err)) throw QuadratureError("non-finite integrand value", err);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) with global bisection of the worst interval.
template <class T, class F>
QuadResult<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                        int max_intervals = 4000) {
  struct Piece {
    double a, b;
    T value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  QuadResult<T> out;
  std::priority_queue<Piece> heap;
  T v;
  double e;
  detail::gk15<T>(f, a, b, v, e);
  heap.push({a, b, v, e});
  T total = v;
  double err = e;
  out.evaluations = 15;
  long steps = 0;
  while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= max_intervals) {
      out.converged = false;
      break;
    }
    Piece p = heap.top();
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      out.converged = false;
      heap.push(p);
      break;
    }
    T v1, v2;
    double e1, e2;
    detail::gk15<T>(f, p.a, m, v1, e1);
    detail::gk15<T>(f, m, p.b, v2, e2);
    out.evaluations += 30;
    heap.push({p.a, m, v1, e1});
    heap.push({m, p.b, v2, e2});
    total += v1 + v2 - p.value;
    err += e1 + e2 - p.err;
    if (++steps % 128 == 0 || err < 0) {
      total = T{};
      err = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().err;
        copy.pop();
      }
    }
  }
  out.value = total;
  out.error = err;
  return out;
}

/// Integral over consecutive breakpoints, each panel adaptive with a share of the tolerance.
template <class T, class F>
QuadResult<T> integrate_panels(F&& f, const std::vector<double>& breaks, double abs_tol,
                               double rel_tol = 0.0, int max_intervals = 4000) {
  QuadResult<T> out;
  const std::size_t n = breaks.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto r = integrate<T>(f, breaks[i], breaks[i + 1], abs_tol / n, rel_tol, max_intervals);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  return out;
}

/// Numerical Laplace inversion on the Bromwich line Re q = A/(2t): trapezoid
/// rule plus Euler summation of the alternating tail. `fhat` maps complex q to
/// the transform value. Discretisation error is bounded by e^{-A} for functions
/// bounded by 1.
struct EulerInversionParams {
  double A = 18.4;
  int n = 20;
  int m = 12;
};

struct InversionValue {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Bromwich nodes q_k = A/(2t) + i k pi / t, k = 0..n+m+1.
inline std::vector<std::complex<double>> euler_nodes(double t, const EulerInversionParams& p = {}) {
  std::vector<std::complex<double>> q;
  for (int k = 0; k <= p.n + p.m + 1; ++k)
    q.emplace_back(p.A / (2 * t), k * std::numbers::pi / t);
  return q;
}

/// Combines transform values at euler_nodes(t, p) into f(t).
inline InversionValue euler_combine(const std::vector<std::complex<double>>& fq, double t,
                                    const EulerInversionParams& p = {}) {
  const int total = p.n + p.m + 1;
  const double scale = std::exp(p.A / 2) / t;
  std::vector<double> partial(total + 1);
  double s = 0.0;
  for (int k = 0; k <= total; ++k)
    partial[k] = (s += scale * (k == 0 ? 0.5 : (k % 2 ? -1.0 : 1.0)) * std::real(fq[k]));
  auto euler = [&](int n) {
    double acc = 0.0, binom = 1.0;
    for (int k = 0; k <= p.m; ++k) {
      acc += binom * partial[n + k];
      binom = binom * (p.m - k) / (k + 1);
    }
    return acc / std::pow(2.0, p.m);
  };
  InversionValue out;
  out.value = euler(p.n);
  out.error = std::abs(out.value - euler(p.n + 1)) + std::exp(-p.A);
  out.evaluations = total + 1;
  return out;
}

template <class F>
InversionValue euler_inversion(F&& fhat, double t, const EulerInversionParams& p = {}) {
  std::vector<std::complex<double>> fq;
  for (const auto& q : euler_nodes(t, p)) fq.push_back(fhat(q));
  return euler_combine(fq, t, p);
}

/// Wynn epsilon acceleration of the partial sums of a slowly convergent series.
inline std::complex<double> wynn_epsilon(const std::vector<std::complex<double>>& partial) {
  using C = std::complex<double>;
  const std::size_t n = partial.size();
  if (n == 0) return 0.0;
  std::vector<C> prev(n, 0.0), cur = partial;
  C best = partial.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<C> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const C d = cur[i + 1] - cur[i];
      if (std::abs(d) < 1e-300) return best;
      next[i] = (k == 1 ? C(0.0) : prev[i + 1]) + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0 && !cur.empty()) best = cur.back();
  }
  return best;
}

}  // namespace levywh
