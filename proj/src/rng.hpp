#pragma once

#include <array>
#include <cstdint>

namespace garchlim {

// Counter-style key mixing for deriving independent substreams from a master
// seed. Streams derived from distinct (a, b, c) keys are independent for all
// practical purposes, and the derivation does not depend on call order, so
// replicate-parallel code is deterministic regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

// xoshiro256++ stream with the samplers used across the library. All draws
// are exact-method samplers (no approximations), so results are exactly
// reproducible from the seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  static RngStream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0) {
    return RngStream(derive_seed(master, a, b, c));
  }

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform01();

  // Standard normal via the Marsaglia polar method (one value cached).
  double normal();

  // Centered Cauchy with density (a/pi) / (1 + (a z)^2), via inverse CDF.
  double cauchy(double a);

  // Gamma(shape, rate 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

  // Poisson(mean) by inversion with sequential search; exact for moderate means.
  long poisson(double mean);

  // Binomial(n, p) by inversion with sequential search; exact for small n*p.
  long binomial(long n, double p);

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace garchlim
