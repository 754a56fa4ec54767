#include "smperf/fading.hpp"

#include <cmath>
#include <sstream>

#include "smperf/quadrature.hpp"

namespace smperf::fading {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("fading: ") + what);
}

// upper integration limit holding the Gamma(shape) tail below ~1e-20
double gamma_cutoff(double shape) { return shape + 14.0 * std::sqrt(shape + 1.0) + 48.0; }

// seeded panel edges concentrating where the Gamma(shape) weight lives
std::vector<double> gamma_panels(double shape) {
  const double mu = shape;
  const double sd = std::sqrt(shape);
  std::vector<double> e{0.0};
  if (shape < 1.0) {
    e.push_back(1e-6);
    e.push_back(1e-3);
    e.push_back(0.1);
  }
  for (double k : {-6.0, -2.0, 0.0, 2.0, 6.0}) {
    const double v = mu + k * sd;
    if (v > e.back()) e.push_back(v);
  }
  e.push_back(gamma_cutoff(shape));
  return e;
}

}  // namespace

EgkLinkParams::EgkLinkParams(double m_, double beta_, double m_s_, double beta_s_, double omega_)
    : m(m_), beta(beta_), m_s(m_s_), beta_s(beta_s_), omega(omega_) {
  require(m > 0.5, "fading severity m must exceed 0.5");
  require(m_s > 0.5, "shadowing severity m_s must exceed 0.5");
  require(beta > 0.0, "fading shaping factor beta must be positive");
  require(beta_s > 0.0, "shadowing shaping factor beta_s must be positive");
  require(omega > 0.0, "mean square envelope omega must be positive");
  require(std::isfinite(log_b()) && std::isfinite(log_b_s()) && log_b() < 700.0 &&
              log_b_s() < 700.0,
          "normalizers b, b_s must be finite");
}

double EgkLinkParams::log_b() const { return std::lgamma(m + 2.0 / beta) - std::lgamma(m); }
double EgkLinkParams::log_b_s() const {
  return std::lgamma(m_s + 2.0 / beta_s) - std::lgamma(m_s);
}

double EgkLinkParams::log_power_moment(int k) const {
  return k * std::log(omega) + std::lgamma(m + 2.0 * k / beta) - std::lgamma(m) +
         std::lgamma(m_s + 2.0 * k / beta_s) - std::lgamma(m_s) - k * (log_b() + log_b_s());
}

NakagamiParams::NakagamiParams(double m_, double omega_) : m(m_), omega(omega_) {
  require(m > 0.5, "fading severity m must exceed 0.5");
  require(omega > 0.0, "mean square envelope omega must be positive");
}

double NakagamiParams::log_power_moment(int k) const {
  return k * (std::log(omega) - std::log(m)) + std::lgamma(m + k) - std::lgamma(m);
}

GeneralizedKParams::GeneralizedKParams(double m_, double m_s_, double omega_)
    : m(m_), m_s(m_s_), omega(omega_) {
  require(m > 0.5, "fading severity m must exceed 0.5");
  require(m_s > 0.5, "shadowing severity m_s must exceed 0.5");
  require(omega > 0.0, "mean square envelope omega must be positive");
}

FadingFamily FadingFamily::nakagami(double m, double omega) {
  return FadingFamily(NakagamiParams(m, omega));
}
FadingFamily FadingFamily::generalized_k(double m, double m_s, double omega) {
  return FadingFamily(GeneralizedKParams(m, m_s, omega));
}
FadingFamily FadingFamily::egk(const EgkLinkParams& p) { return FadingFamily(p); }

FadingFamily::Kind FadingFamily::kind() const {
  if (std::holds_alternative<NakagamiParams>(v_)) return Kind::Nakagami;
  if (std::holds_alternative<GeneralizedKParams>(v_)) return Kind::GeneralizedK;
  return Kind::Egk;
}

double FadingFamily::omega() const {
  if (auto* n = std::get_if<NakagamiParams>(&v_)) return n->omega;
  if (auto* g = std::get_if<GeneralizedKParams>(&v_)) return g->omega;
  return std::get<EgkLinkParams>(v_).omega;
}

bool FadingFamily::has_exact_egk() const { return kind() != Kind::Nakagami; }

EgkLinkParams FadingFamily::as_egk() const {
  if (auto* g = std::get_if<GeneralizedKParams>(&v_))
    return EgkLinkParams(g->m, 2.0, g->m_s, 2.0, g->omega);
  if (auto* e = std::get_if<EgkLinkParams>(&v_)) return *e;
  throw DomainError(
      "fading: Nakagami-m has no exact EGK embedding (m_s -> infinity limit); "
      "use egk_surrogate() for limit studies");
}

EgkLinkParams FadingFamily::egk_surrogate(double m_s_limit) const {
  require(m_s_limit > 0.5, "surrogate m_s must exceed 0.5");
  if (auto* n = std::get_if<NakagamiParams>(&v_))
    return EgkLinkParams(n->m, 2.0, m_s_limit, 2.0, n->omega);
  return as_egk();
}

const NakagamiParams* FadingFamily::nakagami_params() const {
  return std::get_if<NakagamiParams>(&v_);
}
const GeneralizedKParams* FadingFamily::gk_params() const {
  return std::get_if<GeneralizedKParams>(&v_);
}
const EgkLinkParams* FadingFamily::egk_params() const { return std::get_if<EgkLinkParams>(&v_); }

double FadingFamily::log_power_moment(int k) const {
  if (auto* n = std::get_if<NakagamiParams>(&v_)) return n->log_power_moment(k);
  return as_egk().log_power_moment(k);
}

std::string FadingFamily::describe() const {
  std::ostringstream os;
  if (auto* n = std::get_if<NakagamiParams>(&v_)) {
    os << "nakagami(m=" << n->m << ", omega=" << n->omega << ")";
  } else if (auto* g = std::get_if<GeneralizedKParams>(&v_)) {
    os << "gk(m=" << g->m << ", m_s=" << g->m_s << ", omega=" << g->omega << ")";
  } else {
    const auto& e = std::get<EgkLinkParams>(v_);
    os << "egk(m=" << e.m << ", beta=" << e.beta << ", m_s=" << e.m_s << ", beta_s=" << e.beta_s
       << ", omega=" << e.omega << ")";
  }
  return os.str();
}

bool FadingFamily::operator==(const FadingFamily& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (auto* n = std::get_if<NakagamiParams>(&v_)) {
    auto* p = std::get_if<NakagamiParams>(&o.v_);
    return n->m == p->m && n->omega == p->omega;
  }
  if (auto* g = std::get_if<GeneralizedKParams>(&v_)) {
    auto* p = std::get_if<GeneralizedKParams>(&o.v_);
    return g->m == p->m && g->m_s == p->m_s && g->omega == p->omega;
  }
  const auto& e = std::get<EgkLinkParams>(v_);
  const auto& p = std::get<EgkLinkParams>(o.v_);
  return e.m == p.m && e.beta == p.beta && e.m_s == p.m_s && e.beta_s == p.beta_s &&
         e.omega == p.omega;
}

// ---------------------------------------------------------------------------
// Envelope sampling
// ---------------------------------------------------------------------------

EnvelopeSampler::EnvelopeSampler(const FadingFamily& link) {
  if (auto* n = link.nakagami_params()) {
    nakagami_ = true;
    shape_f_ = n->m;
    scale_ = n->omega / n->m;
    return;
  }
  const EgkLinkParams e = link.as_egk();
  shape_f_ = e.m;
  shape_s_ = e.m_s;
  exp_f_ = 2.0 / e.beta;
  exp_s_ = 2.0 / e.beta_s;
  scale_ = e.omega * std::exp(-e.log_b() - e.log_b_s());
}

double EnvelopeSampler::operator()(RandomStream& rng) const {
  if (nakagami_) return std::sqrt(scale_ * rng.gamma(shape_f_));
  const double gf = rng.gamma(shape_f_);
  const double gs = rng.gamma(shape_s_);
  return std::sqrt(scale_ * std::pow(gf, exp_f_) * std::pow(gs, exp_s_));
}

double sample_envelope(const EgkLinkParams& p, RandomStream& rng) {
  return EnvelopeSampler(FadingFamily::egk(p))(rng);
}

double sample_envelope(const FadingFamily& link, RandomStream& rng) {
  return EnvelopeSampler(link)(rng);
}

// ---------------------------------------------------------------------------
// Hankel kernel
// ---------------------------------------------------------------------------

HankelKernel::HankelKernel(const FadingFamily& link, double rel_tol)
    : link_(link), rel_tol_(rel_tol) {
  using specfun::FoxHSpec;
  if (auto* n = link.nakagami_params()) {
    // E[J0(R a)] = 1F1(m; 1; -omega R^2/(4m)) as a Mellin-Barnes integral
    FoxHSpec spec{1, 1, {{1.0 - n->m, 1.0}}, {{0.0, 1.0}, {0.0, 1.0}}};
    contour_ = std::make_unique<specfun::FoxHEvaluator>(spec, rel_tol, -std::lgamma(n->m));
    log_x_const_ = std::log(n->omega / (4.0 * n->m));
    x_inverse_r2_ = false;
    return;
  }
  const EgkLinkParams e = link.as_egk();
  FoxHSpec spec{2,
                1,
                {{1.0, 1.0}, {1.0, 1.0}},
                {{e.m, 2.0 / e.beta}, {e.m_s, 2.0 / e.beta_s}}};
  contour_ = std::make_unique<specfun::FoxHEvaluator>(spec, rel_tol,
                                                      -std::lgamma(e.m) - std::lgamma(e.m_s));
  log_x_const_ = std::log(4.0) + e.log_b() + e.log_b_s() - std::log(e.omega);
  x_inverse_r2_ = true;
}

// Alternating moment series E[J0(R a)] = sum (-1)^k (R/2)^{2k} E[a^{2k}]/(k!)^2.
// Accepted only while terms decrease monotonically down to the tolerance; the
// series is asymptotic for heavy-tailed links and must not be pushed past its
// turnaround.
double HankelKernel::series(double r_freq, bool& converged) {
  converged = false;
  const double l2 = 2.0 * std::log(0.5 * r_freq);
  double sum = 0.0, prev = std::numeric_limits<double>::infinity();
  constexpr int kMaxTerms = 64;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (static_cast<int>(log_moments_.size()) <= k)
      log_moments_.push_back(link_.log_power_moment(k));
    const double lt = log_moments_[k] + k * l2 - 2.0 * std::lgamma(k + 1.0);
    const double t = std::exp(lt);
    if (t >= prev) return sum;  // turnaround: asymptotic regime, reject
    sum += (k % 2 == 0) ? t : -t;
    if (t <= 1e-10 * std::max(1.0, std::abs(sum))) {
      converged = true;
      return sum;
    }
    prev = t;
  }
  return sum;
}

double HankelKernel::operator()(double r_freq) {
  if (!(r_freq >= 0.0)) throw DomainError("hankel_kernel: r_freq must be non-negative");
  if (r_freq == 0.0) return 1.0;
  bool ok = false;
  const double s = series(r_freq, ok);
  if (ok) return s;
  const double lx = log_x_const_ + (x_inverse_r2_ ? -2.0 : 2.0) * std::log(r_freq);
  return contour_->evaluate(std::exp(lx)).value;
}

double hankel_kernel(const EgkLinkParams& p, double r_freq) {
  HankelKernel k(FadingFamily::egk(p));
  return k(r_freq);
}

double hankel_kernel(const FadingFamily& link, double r_freq) {
  HankelKernel k(link);
  return k(r_freq);
}

// ---------------------------------------------------------------------------
// Per-link SNR MGF
// ---------------------------------------------------------------------------

namespace {

// E[exp(-lam * (omega/(b b_s)) * Gf^{2/beta} Gs^{2/beta_s})] by nested
// adaptive quadrature over the two gamma densities; the inner integral
// collapses to a closed form when beta == 2.
double egk_power_mgf(const EgkLinkParams& p, double lam) {
  const double inv_bbs = std::exp(-p.log_b() - p.log_b_s());
  const double w_scale = lam * p.omega * inv_bbs;
  const double lg_m = std::lgamma(p.m);
  const double lg_ms = std::lgamma(p.m_s);
  const double ef = 2.0 / p.beta;
  const double es = 2.0 / p.beta_s;

  auto inner = [&](double ws) -> double {
    if (p.beta == 2.0) return std::pow(1.0 + ws, -p.m);
    auto f = [&](double g) {
      return std::exp((p.m - 1.0) * std::log(g) - g - lg_m - ws * std::pow(g, ef));
    };
    return quad::adaptive_panels(f, gamma_panels(p.m), 1e-10, 1e-14).value;
  };
  auto outer = [&](double gs) {
    return std::exp((p.m_s - 1.0) * std::log(gs) - gs - lg_ms) *
           inner(w_scale * std::pow(gs, es));
  };
  return quad::adaptive_panels(outer, gamma_panels(p.m_s), 1e-9, 1e-13).value;
}

}  // namespace

double mgf_link_snr(const EgkLinkParams& p, double gamma_bar, double s) {
  if (!(gamma_bar > 0.0)) throw DomainError("mgf_link_snr: gamma_bar must be positive");
  if (!(s >= 0.0)) throw DomainError("mgf_link_snr: s must be non-negative");
  if (s == 0.0) return 1.0;
  return egk_power_mgf(p, s * gamma_bar);
}

double mgf_link_snr(const FadingFamily& link, double gamma_bar, double s) {
  if (!(gamma_bar > 0.0)) throw DomainError("mgf_link_snr: gamma_bar must be positive");
  if (!(s >= 0.0)) throw DomainError("mgf_link_snr: s must be non-negative");
  if (s == 0.0) return 1.0;
  if (auto* n = link.nakagami_params())
    return std::pow(1.0 + s * gamma_bar * n->omega / n->m, -n->m);
  return egk_power_mgf(link.as_egk(), s * gamma_bar);
}

}  // namespace smperf::fading
