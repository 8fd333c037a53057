#include "likelihood.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "error.hpp"

namespace garchlim {

namespace {

// Walks the volatility recursion while recovering innovations, accumulating
// both log f(z_k) and log h_k. Shared by inversion and log-density so the two
// agree bit for bit.
struct ChainWalk {
  std::vector<double> z;
  double sum_log_f = 0.0;
  double sum_log_h = 0.0;
};

ChainWalk walk_chain(Model model, const Theta& theta, const PathSkeleton& skeleton,
                     const JumpLaw* law) {
  theta.validate();
  if (skeleton.d == 0) throw std::domain_error("invert_innovations: skeleton has no jumps");
  if (theta.h0 + theta.beta <= 0.0) {
    throw SingularModelError("volatility chain is identically zero (h0 + beta = 0)");
  }
  const std::size_t d = skeleton.d;
  if (skeleton.x.size() != d) throw std::domain_error("skeleton increments missing");
  const bool equal_spacing = model == Model::Mcogarch;
  if (!equal_spacing && skeleton.w.size() != d) {
    throw std::domain_error("cogarch skeleton requires spacings");
  }

  ChainWalk out;
  out.z.resize(d);
  double h = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double wk = equal_spacing ? 1.0 / static_cast<double>(d) : skeleton.w[k];
    if (!(wk > 0.0)) throw std::domain_error("skeleton spacings must be positive");
    if (k == 0) {
      h = first_chain_volatility(theta, wk);
    } else {
      const double zp = out.z[k - 1];
      h = relax_volatility(theta, (1.0 + theta.lambda * zp * zp) * h, wk);
    }
    if (!(h > 0.0)) {
      throw SingularModelError("volatility chain hit zero; innovations are not recoverable");
    }
    out.z[k] = skeleton.x[k] / std::sqrt(h);
    out.sum_log_h += std::log(h);
    if (law != nullptr) out.sum_log_f += law->log_density(out.z[k]);
  }
  return out;
}

}  // namespace

Inversion invert_innovations(Model model, const Theta& theta, const PathSkeleton& skeleton) {
  ChainWalk walk = walk_chain(model, theta, skeleton, nullptr);
  return Inversion{std::move(walk.z), -0.5 * walk.sum_log_h};
}

double log_density(Model model, const Theta& theta, const PathSkeleton& skeleton,
                   const JumpLaw& law) {
  if (skeleton.d == 0) return 0.0;
  ChainWalk walk = walk_chain(model, theta, skeleton, &law);
  return walk.sum_log_f - 0.5 * walk.sum_log_h;
}

double likelihood_ratio(Model model, const Theta& theta, const Theta& theta0,
                        const PathSkeleton& skeleton, const JumpLaw& law) {
  if (skeleton.d == 0) return 1.0;
  const double num = log_density(model, theta, skeleton, law);
  const double den = log_density(model, theta0, skeleton, law);
  return std::exp(num - den);
}

LrBatch lr_sample(Model model, const Theta& theta, const Theta& theta0, double gamma,
                  const JumpLaw& law, std::size_t count, std::uint64_t seed,
                  unsigned threads) {
  theta.validate();
  theta0.validate();
  if (count < 1) throw std::domain_error("lr_sample: count must be >= 1");
  if (!(gamma > 0.0)) throw std::domain_error("lr_sample: gamma must be positive");

  LrBatch batch;
  batch.model = model;
  batch.theta = theta;
  batch.theta0 = theta0;
  batch.gamma = gamma;
  batch.law_spec = law.spec_string();
  batch.seed = seed;
  batch.samples.resize(count);

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RngStream stream = RngStream::substream(seed, r);
      const PathSkeleton skel = simulate_skeleton(model, theta0, gamma, law, stream);
      batch.samples[r] = likelihood_ratio(model, theta, theta0, skel, law);
    }
  };

  unsigned nthreads = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (nthreads <= 1 || count < 4096) {
    worker(0, count);
    return batch;
  }
  nthreads = std::min<unsigned>(nthreads, 64);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + nthreads - 1) / nthreads;
  for (unsigned t = 0; t < nthreads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    if (begin >= count) break;
    pool.emplace_back(worker, begin, std::min(begin + chunk, count));
  }
  for (auto& th : pool) th.join();
  return batch;
}

}  // namespace garchlim
