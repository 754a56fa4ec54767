#ifndef SMPERF_SPECFUN_HPP
#define SMPERF_SPECFUN_HPP

#include <complex>
#include <vector>

#include "smperf/errors.hpp"

namespace smperf::specfun {

inline constexpr double kFoxHDefaultTol = 1e-8;

// Value plus an achieved-tolerance estimate (relative). Every contour or
// series evaluation reports how well it actually converged so downstream
// consumers can separate model error from evaluation error.
struct Estimate {
  double value = 0.0;
  double tol = 0.0;
};

// Principal-branch log-gamma for complex argument.
//
// Lanczos approximation (g = 607/128, 15 terms) for Re z >= 0.5, reflection
// formula otherwise. Relative error is ~1e-14 on the right half plane; on the
// reflected side the imaginary part is reduced modulo 2*pi (sufficient for
// exp(sum of log-gammas), which is how every caller here uses it).
std::complex<double> log_gamma_complex(std::complex<double> z);

// Real digamma function, all non-pole real arguments.
double digamma(double x);

// Gauss hypergeometric 2F1(a,b;c;z) for real parameters and z < 1.
//
// Power series for |z| <= 0.5, Pfaff transformation z -> z/(z-1) for z < 0,
// and the 1-z linear transformation for z in (0.5, 1), including the
// logarithmic series when c-a-b is an integer. Accurate over the whole
// z in (-inf, 1) range; throws DomainError at z >= 1 or non-positive
// integer c.
double gauss_2f1(double a, double b, double c, double z);

// One (coeff, scale) parameter pair of a Fox H-function: an (a_j, alpha_j)
// upper entry or a (b_j, beta_j) lower entry.
struct FoxHParam {
  double coeff = 0.0;
  double scale = 1.0;
};

// Fox H-function instance
//
//   H[x] = (1/2*pi*i) Int Theta(s) x^{-s} ds        (vertical contour)
//
//   Theta(s) =  prod_{j<=m} Gamma(b_j + beta_j s) prod_{j<=n} Gamma(1 - a_j - alpha_j s)
//              ------------------------------------------------------------------------
//               prod_{j>m} Gamma(1 - b_j - beta_j s) prod_{j>n} Gamma(a_j + alpha_j s)
//
// The contour must separate the left pole set {s <= -b_j/beta_j, j <= m}
// from the right pole set {s >= (1-a_j)/alpha_j, j <= n}.
struct FoxHSpec {
  int m = 0, n = 0;
  std::vector<FoxHParam> upper;  // length p
  std::vector<FoxHParam> lower;  // length q

  void validate() const;        // orders and positivity; throws DomainError
  double left_bound() const;    // max_j(-b_j/beta_j), -inf when m == 0
  double right_bound() const;   // min_j((1-a_j)/alpha_j), +inf when n == 0
};

// Meijer G-function instance; a Fox H with all scales equal to one.
struct MeijerGSpec {
  int m = 0, n = 0;
  std::vector<double> upper, lower;

  FoxHSpec to_fox_h() const;  // lossless conversion
};

// Reusable Mellin-Barnes evaluator for one FoxHSpec.
//
// The gamma-product factor Theta(s) on the contour does not depend on the
// argument x, so it is tabulated once and reused across evaluations; only
// the x^{-s} rotation is recomputed per call. This makes sweeps of the same
// H-function over many arguments (Hankel kernels inside quadratures) cheap.
//
// `log_scale` is added to log Theta at every node: callers with huge gamma
// normalizers (for example 1/Gamma(m_s) with m_s ~ 1e6) must fold them in
// here instead of dividing the result, or the node values overflow.
//
// Not thread-safe; create one evaluator per thread.
class FoxHEvaluator {
 public:
  explicit FoxHEvaluator(FoxHSpec spec, double rel_tol = kFoxHDefaultTol,
                         double log_scale = 0.0);

  Estimate evaluate(double x);

  const FoxHSpec& spec() const { return spec_; }
  double contour_abscissa() const { return c0_; }

 private:
  std::complex<double> log_theta(double t) const;
  void extend();  // double the truncation T
  void refine();  // halve the step h

  FoxHSpec spec_;
  double rel_tol_;
  double log_scale_;
  double c0_ = 0.0;            // contour abscissa
  double h_ = 0.0;             // current step in Im s
  std::vector<std::complex<double>> nodes_;  // log Theta(c0 + i k h) + log_scale
};

// One-shot evaluations (pure; safe from any number of threads).
Estimate fox_h(const FoxHSpec& spec, double x, double rel_tol = kFoxHDefaultTol);
Estimate meijer_g(const MeijerGSpec& spec, double x, double rel_tol = kFoxHDefaultTol);

}  // namespace smperf::specfun

#endif
