#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "jump_laws.hpp"
#include "rng.hpp"

namespace garchlim {

enum class Model { Cogarch, Mcogarch };

std::string model_name(Model m);
Model parse_model(std::string_view name);

// Shared four-dimensional parameter point (h0, beta, alpha, lambda).
struct Theta {
  double h0 = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;

  // All components finite and >= 0; throws std::domain_error otherwise.
  void validate() const;
  bool operator==(const Theta&) const = default;
};

enum class Scheme { H0, KV, M };

Scheme parse_scheme(std::string_view name);

// Discrete-time GARCH coefficient vector produced by a parametrization scheme.
struct GarchCoeffs {
  double h0n = 0.0;
  double betan = 0.0;
  double alphan = 0.0;
  double lambdan = 0.0;
};

// Thinning design: n grid points, per-slot hit probability p_n, target rate
// gamma for n * p_n.
struct ThinningSpec {
  std::size_t n = 0;
  double p_n = 0.0;
  double gamma = 0.0;

  void validate() const;
};

// One simulated path reduced to the jump data that the likelihood needs:
// jump count d, interarrival spacings w (COGARCH only; MCOGARCH volatilities
// depend on the count alone and w stays empty), pre-jump volatilities h,
// increments x, and the arrival times for rendering and audit dumps.
struct PathSkeleton {
  Model model = Model::Cogarch;
  std::size_t d = 0;
  std::vector<double> w;
  std::vector<double> h;
  std::vector<double> x;
  std::vector<double> jump_times;
};

// Coefficient map H_n for the three schemes. H0 accepts the full nonnegative
// orthant (with a dedicated alpha = 0 branch); KV and M require h0, beta,
// alpha > 0.
GarchCoeffs parametrize(Scheme scheme, const Theta& theta, long n);

// n i.i.d. draws of the thinned innovation: 0 with probability 1 - p_n, a
// law draw otherwise.
std::vector<double> thinned_innovations(const ThinningSpec& spec, const JumpLaw& law,
                                        RngStream& stream);

struct GarchPath {
  std::vector<double> g;  // n+1 partial sums, g[0] = 0
  std::vector<double> h;  // n+1 volatilities, h[0] = h0n
};

// G(k) = G(k-1) + sqrt(h(k-1)) z_k,  h(k) = betan + alphan h(k-1) + lambdan h(k-1) z_k^2.
GarchPath garch_path(const GarchCoeffs& coeffs, std::span<const double> innovations);

// Pre-jump volatility after relaxing `h_prev` over spacing `w` toward
// beta/alpha at rate alpha (the alpha = 0 branch adds beta * w).
double relax_volatility(const Theta& theta, double h_prev, double w);

// First chain volatility h_{1,w,theta,1} (deterministic in z).
double first_chain_volatility(const Theta& theta, double w);

// Pre-jump volatility chain for COGARCH at spacings w; h_k depends on the
// innovations only through z_1..z_{k-1}.
std::vector<double> cogarch_volatility_chain(const Theta& theta, std::span<const double> w,
                                             std::span<const double> z);

// Same recursion with all spacings equal to 1/d.
std::vector<double> mcogarch_volatility_chain(const Theta& theta, std::size_t d,
                                              std::span<const double> z);

// Draws d ~ Poisson(gamma), arrival times as uniform order statistics, and
// i.i.d. jump sizes; assembles the skeleton for the requested model.
// Consumes the stream identically for both models, so two streams seeded the
// same yield a common-random-numbers pair of skeletons.
PathSkeleton simulate_skeleton(Model model, const Theta& theta, double gamma,
                               const JumpLaw& law, RngStream& stream);

// Piecewise-linear time change mapping each interarrival interval onto
// length 1/m; identity when there are no jump times.
double time_change_eval(std::span<const double> jump_times, double t);

struct GridPath {
  std::vector<double> g;
  std::vector<double> h;
};

// Cadlag rendering of (G, h) on an increasing grid in [0,1]. COGARCH
// volatility relaxes in real time, MCOGARCH in time-changed time.
GridPath path_on_grid(const Theta& theta, const PathSkeleton& skeleton,
                      std::span<const double> grid);

}  // namespace garchlim
