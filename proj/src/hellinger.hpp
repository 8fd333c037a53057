#pragma once

#include <cstdint>
#include <span>

#include "jump_laws.hpp"
#include "processes.hpp"

namespace garchlim {

// Quadrature configuration for the Hellinger scaling machinery.
struct HellingerConfig {
  double zeta = 0.5;  // default order used by CLI scans
  double quadrature_abs_tol = 1e-10;
  double quadrature_rel_tol = 1e-9;
  // Upper integration limit override for the half-line integral; 0 = choose
  // automatically from the law's tails.
  double integration_truncation = 0.0;

  void validate() const;
};

// True when g has a closed form for this law (the gamma family, including
// the standard normal as its (1/2, 2, 1) member).
bool g_has_closed_form(const JumpLaw& law);

// Closed form (h^(b zeta) / (zeta h^b + 1 - zeta))^(c/b); throws for laws
// without one.
double g_closed_form(const JumpLaw& law, double zeta, double h);

// g_{f,zeta}(h) = h^zeta * integral f(hz)^zeta f(z)^(1-zeta) dz, evaluated by
// adaptive quadrature regardless of closed-form availability (the checking
// route).
double g_eval_quadrature(const JumpLaw& law, double zeta, double h, const HellingerConfig& cfg);

// Preferred evaluation: exact 1 at h = 1, closed form when available,
// quadrature otherwise. Always in (0, 1].
double g_eval(const JumpLaw& law, double zeta, double h, const HellingerConfig& cfg);

// H_{theta1,theta2}(w) = h_{1,w,theta2,1} / h_{1,w,theta1,1} for w in (0,1].
double volatility_ratio(const Theta& theta1, const Theta& theta2, double w);

struct IdentityGap {
  double gap = 0.0;     // lhs - rhs
  double budget = 0.0;  // combined quadrature error budget
  double lhs = 0.0;     // g(sqrt(H(1)))
  double rhs = 0.0;     // integral over w in (0,1) of g(sqrt(H(w)))
};

// The d = 1 comparison between the equal-spacing transform and its
// spacing-averaged counterpart. A gap beyond the budget certifies that the
// two Hellinger transforms differ.
IdentityGap d1_identity_gap(const Theta& theta1, const Theta& theta2, double zeta,
                            const JumpLaw& law, const HellingerConfig& cfg);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

// Monte Carlo estimate of the d-jump Hellinger transform
// E_{theta2}[(p_theta1 / p_theta2)^zeta] conditioned on the jump count and
// spacings. Pass an empty `w` for equal spacing 1/d (the MCOGARCH case and
// the COGARCH reference grid); otherwise w must have length d.
McEstimate hellinger_transform_mc(Model model, std::size_t d, const Theta& theta1,
                                  const Theta& theta2, std::span<const double> w, double zeta,
                                  const JumpLaw& law, std::size_t count, std::uint64_t seed);

}  // namespace garchlim
