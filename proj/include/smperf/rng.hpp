#ifndef SMPERF_RNG_HPP
#define SMPERF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace smperf {

// Deterministic random stream keyed by (master seed, stream index).
//
// All distributions are generated from the raw engine output by code in this
// header, so a given (seed, stream) pair produces the same sequence on every
// build of this project regardless of the standard library's distribution
// internals. Streams with distinct indices are independent for practical
// purposes; parallel workers must each own their stream.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    // splitmix64 over the two keys to decorrelate nearby seeds/streams
    std::uint64_t s = master_seed;
    std::uint64_t a = mix(s += 0x9e3779b97f4a7c15ULL);
    std::uint64_t b = mix(s += 0x9e3779b97f4a7c15ULL);
    s ^= mix(stream_index + 0x632be59bd9b4e019ULL);
    std::uint64_t c = mix(s += 0x9e3779b97f4a7c15ULL);
    std::uint64_t d = mix(s += 0x9e3779b97f4a7c15ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    eng_.seed(seq);
  }

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double uniform_pos() { return 1.0 - uniform(); }

  // standard normal via Box-Muller (pairwise, spare cached)
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925287 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // unit-scale gamma draw, Marsaglia-Tsang squeeze for shape >= 1,
  // boosted by U^{1/shape} for shape < 1
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform_pos();
      double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace smperf

#endif
