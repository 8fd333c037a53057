#include "hellinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "error.hpp"
#include "likelihood.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace garchlim {

void HellingerConfig::validate() const {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("hellinger: zeta must be in (0,1)");
  if (!(quadrature_abs_tol > 0.0) || !(quadrature_rel_tol > 0.0)) {
    throw std::domain_error("hellinger: quadrature tolerances must be positive");
  }
  if (integration_truncation < 0.0) {
    throw std::domain_error("hellinger: truncation must be positive when set");
  }
}

bool g_has_closed_form(const JumpLaw& law) {
  return law.kind() == LawKind::StandardNormal || law.kind() == LawKind::SymmetricGamma;
}

double g_closed_form(const JumpLaw& law, double zeta, double h) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("g: zeta must be in (0,1)");
  if (!(h > 0.0)) throw std::domain_error("g: h must be positive");
  double b = 2.0, c = 1.0;
  if (law.kind() == LawKind::SymmetricGamma) {
    b = law.gg_b();
    c = law.gg_c();
  } else if (law.kind() != LawKind::StandardNormal) {
    throw std::domain_error("g: no closed form for this law");
  }
  const double hb = std::pow(h, b);
  return std::pow(std::pow(h, b * zeta) / (zeta * hb + (1.0 - zeta)), c / b);
}

namespace {

// Conservative half-line truncation point: beyond it the integrand
// f(hz)^zeta f(z)^(1-zeta) has underflowed for every law with light tails.
double truncation_point(const JumpLaw& law, double zeta, double h) {
  switch (law.kind()) {
    case LawKind::StandardNormal: {
      // exponent -(zeta h^2 + 1 - zeta) z^2 / 2
      return std::sqrt(1600.0 / (zeta * h * h + (1.0 - zeta)));
    }
    case LawKind::NormalMixture: {
      double max_mean = 0.0, max_var = 0.0;
      for (double m : law.mix_means()) max_mean = std::max(max_mean, std::fabs(m));
      for (double v : law.mix_variances()) max_var = std::max(max_var, v);
      const double z1 = max_mean + std::sqrt(1600.0 * max_var / (1.0 - zeta));
      const double z2 = (max_mean + std::sqrt(1600.0 * max_var / zeta)) / h;
      return std::min(z1, z2);
    }
    case LawKind::SymmetricGamma: {
      const double a = law.gg_a(), b = law.gg_b(), c = law.gg_c();
      const double scale = a * (zeta * std::pow(h, b) + (1.0 - zeta));
      return std::pow((800.0 + 60.0 * std::fabs(c - 1.0)) / scale, 1.0 / b);
    }
    case LawKind::Cauchy:
      return 0.0;  // handled by the tangent substitution instead
  }
  return 0.0;
}

double g_quadrature_impl(const JumpLaw& law, double zeta, double h, const HellingerConfig& cfg,
                         double* achieved_error) {
  // Integrate f(hz)^zeta f(z)^(1-zeta) over the whole line as a folded
  // half-line integral (the two half-lines are summed pointwise, which also
  // covers asymmetric mixtures).
  auto integrand = [&](double z) {
    const double pos = std::exp(zeta * law.log_density(h * z) +
                                (1.0 - zeta) * law.log_density(z));
    const double neg = std::exp(zeta * law.log_density(-h * z) +
                                (1.0 - zeta) * law.log_density(-z));
    return pos + neg;
  };

  QuadResult q;
  if (law.kind() == LawKind::Cauchy) {
    // z = tan(u) maps (0, pi/2) onto the half-line; the transformed integrand
    // tends to a finite limit at pi/2.
    auto transformed = [&](double u) {
      const double t = std::tan(u);
      const double sec2 = 1.0 + t * t;
      return integrand(t) * sec2;
    };
    const double breaks[] = {kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0};
    q = integrate_adaptive(transformed, 0.0, kPi / 2.0, cfg.quadrature_abs_tol,
                           cfg.quadrature_rel_tol, breaks);
  } else {
    double hi = cfg.integration_truncation > 0.0 ? cfg.integration_truncation
                                                 : truncation_point(law, zeta, h);
    hi = std::max(hi, 1.0);
    // Seed splits at the scales of both density factors.
    std::vector<double> breaks;
    for (double s : {1.0, 1.0 / h, 4.0, 4.0 / h, hi / 4.0}) {
      if (s > 0.0 && s < hi) breaks.push_back(s);
    }
    std::sort(breaks.begin(), breaks.end());
    q = integrate_adaptive(integrand, 0.0, hi, cfg.quadrature_abs_tol, cfg.quadrature_rel_tol,
                           breaks);
  }
  if (achieved_error != nullptr) *achieved_error = q.error;
  return std::pow(h, zeta) * q.value;
}

}  // namespace

double g_eval_quadrature(const JumpLaw& law, double zeta, double h, const HellingerConfig& cfg) {
  cfg.validate();
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("g: zeta must be in (0,1)");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("g: h must be positive");
  return g_quadrature_impl(law, zeta, h, cfg, nullptr);
}

double g_eval(const JumpLaw& law, double zeta, double h, const HellingerConfig& cfg) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("g: zeta must be in (0,1)");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::domain_error("g: h must be positive");
  if (h == 1.0) return 1.0;  // Hoelder equality: integral of f itself
  if (g_has_closed_form(law)) return g_closed_form(law, zeta, h);
  return g_eval_quadrature(law, zeta, h, cfg);
}

double volatility_ratio(const Theta& theta1, const Theta& theta2, double w) {
  theta1.validate();
  theta2.validate();
  if (!(w > 0.0 && w <= 1.0)) throw std::domain_error("volatility_ratio: w must be in (0,1]");
  const double denom = first_chain_volatility(theta1, w);
  if (!(denom > 0.0)) {
    throw SingularModelError("volatility_ratio: theta1 yields zero volatility");
  }
  return first_chain_volatility(theta2, w) / denom;
}

IdentityGap d1_identity_gap(const Theta& theta1, const Theta& theta2, double zeta,
                            const JumpLaw& law, const HellingerConfig& cfg) {
  cfg.validate();
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("gap: zeta must be in (0,1)");

  IdentityGap out;
  out.lhs = g_eval(law, zeta, std::sqrt(volatility_ratio(theta1, theta2, 1.0)), cfg);

  auto inner = [&](double w) {
    return g_eval(law, zeta, std::sqrt(volatility_ratio(theta1, theta2, w)), cfg);
  };
  const double breaks[] = {0.125, 0.25, 0.5, 0.75};
  QuadResult q = integrate_adaptive(inner, 0.0, 1.0, cfg.quadrature_abs_tol,
                                    cfg.quadrature_rel_tol, breaks);
  out.rhs = q.value;
  out.gap = out.lhs - out.rhs;

  // Outer quadrature error plus a uniform bound on the inner evaluation
  // error (closed forms are exact to rounding; quadrature carries its
  // tolerance). The lhs and every inner sample contribute at most
  // inner_err each, and the outer interval has unit length.
  const double inner_err = g_has_closed_form(law)
                               ? 1e-13
                               : std::max(cfg.quadrature_abs_tol,
                                          cfg.quadrature_rel_tol);
  out.budget = q.error + 2.0 * inner_err;
  return out;
}

McEstimate hellinger_transform_mc(Model model, std::size_t d, const Theta& theta1,
                                  const Theta& theta2, std::span<const double> w, double zeta,
                                  const JumpLaw& law, std::size_t count, std::uint64_t seed) {
  theta1.validate();
  theta2.validate();
  if (d < 1) throw std::domain_error("hellinger mc: d must be >= 1");
  if (count < 1) throw std::domain_error("hellinger mc: count must be >= 1");
  if (!(zeta > 0.0 && zeta < 1.0)) throw std::domain_error("hellinger mc: zeta in (0,1)");

  std::vector<double> spacings;
  if (model == Model::Mcogarch || w.empty()) {
    spacings.assign(d, 1.0 / static_cast<double>(d));
  } else {
    if (w.size() != d) throw std::domain_error("hellinger mc: w must have length d");
    spacings.assign(w.begin(), w.end());
  }

  // E_{theta2}[(p1/p2)^zeta] conditioned on (d, w): simulate innovations from
  // the law, push them through the theta2 chain, and evaluate both densities.
  double sum = 0.0, sumsq = 0.0;
  std::vector<double> z(d);
  PathSkeleton skel;
  skel.model = Model::Cogarch;  // explicit spacings drive both cases
  skel.d = d;
  skel.w = spacings;
  skel.x.resize(d);
  for (std::size_t r = 0; r < count; ++r) {
    RngStream stream = RngStream::substream(seed, r);
    law.sample(d, stream, z.data());
    const std::vector<double> h2 = cogarch_volatility_chain(theta2, skel.w, z);
    for (std::size_t k = 0; k < d; ++k) skel.x[k] = std::sqrt(h2[k]) * z[k];
    const double l1 = log_density(Model::Cogarch, theta1, skel, law);
    const double l2 = log_density(Model::Cogarch, theta2, skel, law);
    const double v = std::exp(zeta * (l1 - l2));
    sum += v;
    sumsq += v * v;
  }
  McEstimate est;
  est.count = count;
  est.value = sum / static_cast<double>(count);
  const double var =
      std::max(0.0, sumsq / static_cast<double>(count) - est.value * est.value);
  est.std_error = std::sqrt(var / static_cast<double>(count));
  return est;
}

}  // namespace garchlim
