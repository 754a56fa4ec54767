#ifndef SMPERF_FADING_HPP
#define SMPERF_FADING_HPP

#include <memory>
#include <string>
#include <variant>

#include "smperf/rng.hpp"
#include "smperf/specfun.hpp"

namespace smperf::fading {

// Extended Generalized-K link: generalized-gamma fading (severity m, shaping
// beta) multiplied by generalized-gamma shadowing (severity m_s, shaping
// beta_s), normalized so that omega = E<a^2>.
struct EgkLinkParams {
  double m, beta, m_s, beta_s, omega;

  EgkLinkParams(double m_, double beta_, double m_s_, double beta_s_, double omega_);

  double log_b() const;    // ln( Gamma(m + 2/beta) / Gamma(m) )
  double log_b_s() const;  // ln( Gamma(m_s + 2/beta_s) / Gamma(m_s) )
  double b() const { return std::exp(log_b()); }
  double b_s() const { return std::exp(log_b_s()); }

  // ln E[a^{2k}]
  double log_power_moment(int k) const;
};

struct NakagamiParams {
  double m, omega;
  NakagamiParams(double m_, double omega_);
  double log_power_moment(int k) const;
};

struct GeneralizedKParams {
  double m, m_s, omega;
  GeneralizedKParams(double m_, double m_s_, double omega_);
};

// Discriminated fading family. Nakagami-m is kept as its own exact member
// (single gamma draw); Generalized-K embeds exactly into EGK with both
// shaping factors equal to 2; the Nakagami limit m_s -> infinity is only
// available as the explicit egk_surrogate() approximation.
class FadingFamily {
 public:
  enum class Kind { Nakagami, GeneralizedK, Egk };

  static FadingFamily nakagami(double m, double omega);
  static FadingFamily generalized_k(double m, double m_s, double omega);
  static FadingFamily egk(const EgkLinkParams& p);

  Kind kind() const;
  double omega() const;

  // exact EGK embedding; throws DomainError for Nakagami (no exact one)
  EgkLinkParams as_egk() const;
  bool has_exact_egk() const;
  // explicit large-m_s approximation of a Nakagami link (limit studies only)
  EgkLinkParams egk_surrogate(double m_s_limit) const;

  const NakagamiParams* nakagami_params() const;
  const GeneralizedKParams* gk_params() const;
  const EgkLinkParams* egk_params() const;

  double log_power_moment(int k) const;  // ln E[a^{2k}]
  std::string describe() const;

  bool operator==(const FadingFamily& o) const;

 private:
  explicit FadingFamily(std::variant<NakagamiParams, GeneralizedKParams, EgkLinkParams> v)
      : v_(std::move(v)) {}
  std::variant<NakagamiParams, GeneralizedKParams, EgkLinkParams> v_;
};

// The two links (i = 1, 2) entering one receive branch of Z = |z_2 - z_1|^2.
struct BranchPair {
  FadingFamily first, second;
  bool symmetric() const { return first == second; }
};

// Precomputed envelope sampler for one link; phases are drawn separately.
class EnvelopeSampler {
 public:
  explicit EnvelopeSampler(const FadingFamily& link);
  double operator()(RandomStream& rng) const;

 private:
  bool nakagami_ = false;
  double shape_f_ = 0.0, shape_s_ = 0.0;
  double exp_f_ = 1.0, exp_s_ = 1.0;  // 2/beta, 2/beta_s
  double scale_ = 1.0;                // omega/(b*b_s), or omega/m for Nakagami
};

// One draw of the envelope a with E<a^2> = omega.
double sample_envelope(const EgkLinkParams& p, RandomStream& rng);
double sample_envelope(const FadingFamily& link, RandomStream& rng);

// Zeroth-order Hankel transform of f_alpha(r)/r, i.e. E[J0(r_freq * a)].
//
// Evaluated through the Fox-H closed form on a reusable Mellin-Barnes
// contour, with an alternating moment series taking over where it certifiably
// converges (small r_freq, where the contour route loses accuracy). Values
// are bounded by 1 in magnitude; kernel(0) = 1 is the analytic limit.
class HankelKernel {
 public:
  explicit HankelKernel(const FadingFamily& link, double rel_tol = 1e-9);
  double operator()(double r_freq);

 private:
  double series(double r_freq, bool& converged);

  FadingFamily link_;
  double rel_tol_;
  double log_x_const_;  // kernel argument is exp(log_x_const_ +- 2 ln r)
  bool x_inverse_r2_ = false;
  std::vector<double> log_moments_;
  std::unique_ptr<specfun::FoxHEvaluator> contour_;
};

double hankel_kernel(const EgkLinkParams& p, double r_freq);
double hankel_kernel(const FadingFamily& link, double r_freq);

// E[exp(-s * gamma_bar * a^2)]: the per-link SNR MGF feeding the MRC
// symbol-error integral. Closed form for Nakagami, adaptive quadrature
// against the product-of-gammas construction otherwise.
double mgf_link_snr(const EgkLinkParams& p, double gamma_bar, double s);
double mgf_link_snr(const FadingFamily& link, double gamma_bar, double s);

}  // namespace smperf::fading

#endif
