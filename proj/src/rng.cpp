#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace garchlim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += kGolden;
  return mix64(state);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t x = master;
  x = mix64(x + 1 * kGolden + a);
  x = mix64(x + 2 * kGolden + b);
  x = mix64(x + 3 * kGolden + c);
  return x;
}

RngStream::RngStream(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& w : s_) w = splitmix_next(sm);
  if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = kGolden;
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform01() {
  // 53 random bits shifted into (0,1): ((k + 0.5) * 2^-53) with k in [0, 2^53).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  cached_normal_ = v * f;
  has_cached_normal_ = true;
  return u * f;
}

double RngStream::cauchy(double a) {
  if (!(a > 0.0)) throw std::domain_error("cauchy scale must be positive");
  const double pi = 3.141592653589793238462643383279502884;
  return std::tan(pi * (uniform01() - 0.5)) / a;
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma shape must be positive");
  if (shape < 1.0) {
    // Boost: X ~ Gamma(shape+1), U^(1/shape) * X ~ Gamma(shape).
    const double u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

long RngStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  if (mean == 0.0) return 0;
  const double u = uniform01();
  double p = std::exp(-mean);
  double cum = p;
  long k = 0;
  // u < 1 strictly, so termination is guaranteed by the cap below even in the
  // far tail where the pmf underflows.
  const long cap = static_cast<long>(mean + 60.0 * std::sqrt(mean) + 200.0);
  while (u > cum && k < cap) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

long RngStream::binomial(long n, double p) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial: invalid arguments");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  const double u = uniform01();
  const double odds = p / (1.0 - p);
  double pk = std::pow(1.0 - p, static_cast<double>(n));
  double cum = pk;
  long k = 0;
  while (u > cum && k < n) {
    pk *= odds * static_cast<double>(n - k) / static_cast<double>(k + 1);
    ++k;
    cum += pk;
  }
  return k;
}

}  // namespace garchlim
