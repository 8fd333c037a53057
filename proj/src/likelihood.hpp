#pragma once

#include <cstdint>
#include <vector>

#include "jump_laws.hpp"
#include "processes.hpp"

namespace garchlim {

// Result of inverting the increments of a skeleton back to innovations.
struct Inversion {
  std::vector<double> z;
  double log_jacobian = 0.0;  // -1/2 * sum_k log h_k(theta)
};

// Sequentially recovers z_k = x_k / sqrt(h_k(theta)) along the model's
// volatility recursion (h_k depends on z_1..z_{k-1} only, so the map is
// triangular and invertible whenever h0 + beta > 0).
Inversion invert_innovations(Model model, const Theta& theta, const PathSkeleton& skeleton);

// Log of the theta-dependent density factor of a skeleton:
//   sum_k log f(z_k(theta)) - 1/2 sum_k log h_k(theta),   0 for d = 0.
// The Poisson count factor and the arrival-time density are free of theta
// and cancel in every likelihood ratio formed here, so they are excluded by
// contract.
double log_density(Model model, const Theta& theta, const PathSkeleton& skeleton,
                   const JumpLaw& law);

// Likelihood ratio dP_theta / dP_theta0 evaluated at one fixed skeleton.
double likelihood_ratio(Model model, const Theta& theta, const Theta& theta0,
                        const PathSkeleton& skeleton, const JumpLaw& law);

// A Monte Carlo batch of likelihood ratios sampled under theta0.
struct LrBatch {
  Model model = Model::Cogarch;
  Theta theta;
  Theta theta0;
  double gamma = 4.0;
  std::string law_spec;
  std::uint64_t seed = 0;
  std::vector<double> samples;
};

// Simulates `count` skeletons under theta0 and evaluates the ratio at each.
// Replicate r draws from substream (seed, r), so the batch is deterministic
// given the seed and independent of the number of worker threads
// (threads = 0 picks the hardware count). Ratios are accumulated in log
// space and exponentiated once at the end; with a handful of jumps per path
// the log difference stays far from the overflow threshold, so no clamping
// is applied.
LrBatch lr_sample(Model model, const Theta& theta, const Theta& theta0, double gamma,
                  const JumpLaw& law, std::size_t count, std::uint64_t seed,
                  unsigned threads = 0);

}  // namespace garchlim
