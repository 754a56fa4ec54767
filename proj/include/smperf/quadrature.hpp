#ifndef SMPERF_QUADRATURE_HPP
#define SMPERF_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "smperf/errors.hpp"

namespace smperf::quad {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int panels = 0;
};

namespace detail {

// Gauss-Kronrod 15(7) abscissae and weights (QUADPACK dqk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void kronrod15(F&& f, double a, double b, double& value, double& err) {
  const double hl = 0.5 * (b - a);
  const double ctr = 0.5 * (a + b);
  const double fc = f(ctr);
  double res_k = fc * kWgk[7];
  double res_g = fc * kWg[3];
  double fv[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    const double f1 = f(ctr - dx);
    const double f2 = f(ctr + dx);
    fv[j] = f1 + f2;
    res_k += kWgk[j] * fv[j];
  }
  for (int j = 0; j < 3; ++j) res_g += kWg[j] * fv[2 * j + 1];
  value = res_k * hl;
  err = std::abs((res_k - res_g) * hl);
  if (!std::isfinite(value)) throw ConvergenceError("quadrature: non-finite integrand value");
}

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod 15(7) on seeded panels. Bisects the worst panel
// until the summed error estimate meets max(abs_tol, rel_tol*|value|).
template <class F>
QuadResult adaptive_panels(F&& f, const std::vector<double>& edges, double rel_tol,
                           double abs_tol = 0.0, int max_panels = 4000) {
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, toterr = 0.0;
  int n = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) continue;
    detail::Panel p{edges[i], edges[i + 1], 0.0, 0.0};
    detail::kronrod15(f, p.a, p.b, p.value, p.err);
    total += p.value;
    toterr += p.err;
    heap.push(p);
    ++n;
  }
  while (toterr > std::max(abs_tol, rel_tol * std::abs(total)) && !heap.empty()) {
    if (n >= max_panels)
      throw ConvergenceError("adaptive quadrature: panel budget exhausted (err=" +
                             std::to_string(toterr) + ", value=" + std::to_string(total) + ")");
    detail::Panel p = heap.top();
    heap.pop();
    total -= p.value;
    toterr -= p.err;
    const double mid = 0.5 * (p.a + p.b);
    for (auto [lo, hi] : {std::pair{p.a, mid}, std::pair{mid, p.b}}) {
      detail::Panel q{lo, hi, 0.0, 0.0};
      detail::kronrod15(f, q.a, q.b, q.value, q.err);
      total += q.value;
      toterr += q.err;
      heap.push(q);
      ++n;
    }
  }
  return {total, toterr, n};
}

template <class F>
QuadResult adaptive(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                    int max_panels = 4000) {
  return adaptive_panels(std::forward<F>(f), std::vector<double>{a, b}, rel_tol, abs_tol,
                         max_panels);
}

// Gauss-Legendre rule of order n on [-1, 1]; nodes by Newton iteration on P_n.
struct GlRule {
  std::vector<double> x, w;
};

const GlRule& gl_rule(int n);

template <class F>
double gauss_legendre(F&& f, double a, double b, int n) {
  const GlRule& r = gl_rule(n);
  const double hl = 0.5 * (b - a);
  const double ctr = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.w[i] * f(ctr + hl * r.x[i]);
  return s * hl;
}

}  // namespace smperf::quad

#endif
