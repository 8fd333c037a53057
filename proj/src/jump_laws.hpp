#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace garchlim {

enum class LawKind { StandardNormal, Cauchy, NormalMixture, SymmetricGamma };

// A jump-size distribution with an everywhere-defined Lebesgue density.
// Values are immutable once built and safe to share across threads; sampling
// draws from a caller-supplied stream.
//
// Supported variants and their CLI/text specs:
//   normal                        standard normal
//   cauchy:a=<real>               density (a/pi) / (1 + (a z)^2)
//   mixture                       1/2 N(-0.5, 0.75) + 1/2 N(0.5, 0.75)
//   gengamma:a=<r>,b=<r>,c=<r>    density  b a^(c/b) / (2 Gamma(c/b)) * exp(-a|z|^b) |z|^(c-1)
//
// The generalized gamma constant is chosen so the density integrates to one;
// with (a,b,c) = (1/2, 2, 1) it reduces exactly to the standard normal.
class JumpLaw {
 public:
  static JumpLaw standard_normal();
  static JumpLaw cauchy(double a);
  // The fixed symmetric two-component mixture used throughout the tables.
  static JumpLaw symmetric_mixture();
  static JumpLaw normal_mixture(std::vector<double> weights, std::vector<double> means,
                                std::vector<double> variances);
  static JumpLaw symmetric_gamma(double a, double b, double c);

  // Parses the textual law spec format above. Throws ConfigError on bad input.
  static JumpLaw parse(std::string_view spec);
  // Canonical spec string (round-trips through parse()).
  std::string spec_string() const;

  LawKind kind() const { return kind_; }

  double density(double z) const;
  double log_density(double z) const;
  double cdf(double z) const;

  void sample(std::size_t count, RngStream& stream, double* out) const;
  std::vector<double> sample_batch(std::size_t count, RngStream& stream) const;

  bool symmetric() const;

  // Parameters (meaningful per kind; see factories).
  double cauchy_scale() const { return cauchy_a_; }
  double gg_a() const { return gg_a_; }
  double gg_b() const { return gg_b_; }
  double gg_c() const { return gg_c_; }
  const std::vector<double>& mix_weights() const { return mix_w_; }
  const std::vector<double>& mix_means() const { return mix_mean_; }
  const std::vector<double>& mix_variances() const { return mix_var_; }

 private:
  JumpLaw() = default;

  LawKind kind_ = LawKind::StandardNormal;
  double cauchy_a_ = 1.0;
  double gg_a_ = 0.5, gg_b_ = 2.0, gg_c_ = 1.0;
  double gg_log_norm_ = 0.0;  // log of the gengamma normalizing constant
  std::vector<double> mix_w_, mix_mean_, mix_var_;
};

}  // namespace garchlim
