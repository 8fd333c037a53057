#include "processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "error.hpp"

namespace garchlim {

std::string model_name(Model m) { return m == Model::Cogarch ? "COGARCH" : "MCOGARCH"; }

Model parse_model(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cogarch") return Model::Cogarch;
  if (lower == "mcogarch") return Model::Mcogarch;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected cogarch|mcogarch)");
}

void Theta::validate() const {
  for (double v : {h0, beta, alpha, lambda}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::domain_error("theta components must be finite and nonnegative");
    }
  }
}

Scheme parse_scheme(std::string_view name) {
  if (name == "H0" || name == "h0") return Scheme::H0;
  if (name == "KV" || name == "kv") return Scheme::KV;
  if (name == "M" || name == "m") return Scheme::M;
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected H0|KV|M)");
}

void ThinningSpec::validate() const {
  if (n < 1) throw std::domain_error("thinning: n must be >= 1");
  if (!(p_n > 0.0 && p_n < 1.0)) throw std::domain_error("thinning: require 0 < p_n < 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("thinning: gamma must be positive");
  }
}

GarchCoeffs parametrize(Scheme scheme, const Theta& theta, long n) {
  theta.validate();
  if (n < 1) throw std::domain_error("parametrize: n must be >= 1");
  const double nd = static_cast<double>(n);
  switch (scheme) {
    case Scheme::H0: {
      if (theta.alpha == 0.0) {
        return GarchCoeffs{theta.h0 + theta.beta / nd, theta.beta / nd, 1.0, theta.lambda};
      }
      const double e = std::exp(-theta.alpha / nd);
      const double drift = theta.beta / theta.alpha * (1.0 - e);
      return GarchCoeffs{theta.h0 * e + drift, drift, e, theta.lambda * e};
    }
    case Scheme::KV:
    case Scheme::M: {
      if (!(theta.h0 > 0.0 && theta.beta > 0.0 && theta.alpha > 0.0)) {
        throw std::domain_error("parametrize: KV and M require h0, beta, alpha > 0");
      }
      const double e = std::exp(-theta.alpha / nd);
      const double lam = scheme == Scheme::KV ? theta.lambda : theta.lambda * e;
      return GarchCoeffs{theta.h0, theta.beta / nd, e, lam};
    }
  }
  throw std::domain_error("parametrize: bad scheme");
}

std::vector<double> thinned_innovations(const ThinningSpec& spec, const JumpLaw& law,
                                        RngStream& stream) {
  spec.validate();
  std::vector<double> z(spec.n, 0.0);
  for (std::size_t k = 0; k < spec.n; ++k) {
    if (stream.uniform01() < spec.p_n) {
      law.sample(1, stream, &z[k]);
    }
  }
  return z;
}

GarchPath garch_path(const GarchCoeffs& coeffs, std::span<const double> innovations) {
  for (double v : {coeffs.h0n, coeffs.betan, coeffs.alphan, coeffs.lambdan}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::domain_error("garch_path: coefficients must be finite and nonnegative");
    }
  }
  if (innovations.empty()) throw std::domain_error("garch_path: need at least one innovation");
  const std::size_t n = innovations.size();
  GarchPath path;
  path.g.resize(n + 1);
  path.h.resize(n + 1);
  path.g[0] = 0.0;
  path.h[0] = coeffs.h0n;
  for (std::size_t k = 1; k <= n; ++k) {
    const double z = innovations[k - 1];
    const double hp = path.h[k - 1];
    path.g[k] = path.g[k - 1] + std::sqrt(hp) * z;
    path.h[k] = coeffs.betan + coeffs.alphan * hp + coeffs.lambdan * hp * z * z;
  }
  return path;
}

double relax_volatility(const Theta& theta, double h_prev, double w) {
  if (theta.alpha == 0.0) return theta.beta * w + h_prev;
  const double e = std::exp(-theta.alpha * w);
  return theta.beta / theta.alpha * (1.0 - e) + e * h_prev;
}

double first_chain_volatility(const Theta& theta, double w) {
  return relax_volatility(theta, theta.h0, w);
}

std::vector<double> cogarch_volatility_chain(const Theta& theta, std::span<const double> w,
                                             std::span<const double> z) {
  theta.validate();
  if (w.size() != z.size() || w.empty()) {
    throw std::domain_error("cogarch chain: w and z must be nonempty with equal length");
  }
  for (double wk : w) {
    if (!(wk > 0.0)) throw std::domain_error("cogarch chain: spacings must be positive");
  }
  std::vector<double> h(w.size());
  h[0] = first_chain_volatility(theta, w[0]);
  for (std::size_t k = 1; k < w.size(); ++k) {
    const double zp = z[k - 1];
    h[k] = relax_volatility(theta, (1.0 + theta.lambda * zp * zp) * h[k - 1], w[k]);
  }
  return h;
}

std::vector<double> mcogarch_volatility_chain(const Theta& theta, std::size_t d,
                                              std::span<const double> z) {
  if (d < 1 || z.size() != d) {
    throw std::domain_error("mcogarch chain: need d >= 1 innovations");
  }
  const std::vector<double> w(d, 1.0 / static_cast<double>(d));
  return cogarch_volatility_chain(theta, w, z);
}

PathSkeleton simulate_skeleton(Model model, const Theta& theta, double gamma,
                               const JumpLaw& law, RngStream& stream) {
  theta.validate();
  if (!(gamma > 0.0)) throw std::domain_error("simulate_skeleton: gamma must be positive");

  PathSkeleton skel;
  skel.model = model;
  const long d = stream.poisson(gamma);
  skel.d = static_cast<std::size_t>(d);
  if (d == 0) return skel;

  skel.jump_times.resize(skel.d);
  for (;;) {
    for (auto& t : skel.jump_times) t = stream.uniform01();
    std::sort(skel.jump_times.begin(), skel.jump_times.end());
    // Exact floating-point ties are a null set of the law; redraw them so the
    // spacings stay strictly positive.
    if (std::adjacent_find(skel.jump_times.begin(), skel.jump_times.end()) ==
        skel.jump_times.end()) {
      break;
    }
  }

  std::vector<double> z(skel.d);
  law.sample(skel.d, stream, z.data());

  if (model == Model::Cogarch) {
    skel.w.resize(skel.d);
    double prev = 0.0;
    for (std::size_t k = 0; k < skel.d; ++k) {
      skel.w[k] = skel.jump_times[k] - prev;
      prev = skel.jump_times[k];
    }
    skel.h = cogarch_volatility_chain(theta, skel.w, z);
  } else {
    skel.h = mcogarch_volatility_chain(theta, skel.d, z);
  }

  skel.x.resize(skel.d);
  for (std::size_t k = 0; k < skel.d; ++k) skel.x[k] = std::sqrt(skel.h[k]) * z[k];
  return skel;
}

double time_change_eval(std::span<const double> jump_times, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("time_change_eval: t must be in [0,1]");
  const std::size_t m = jump_times.size();
  if (m == 0) return t;
  double prev = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double tk = jump_times[k];
    if (!(tk > prev) || !(tk < 1.0)) {
      throw std::domain_error("time_change_eval: jump times must be strictly increasing in (0,1)");
    }
    prev = tk;
  }
  const double md = static_cast<double>(m);
  if (t >= jump_times[m - 1]) {
    const double t_prev = m >= 2 ? jump_times[m - 2] : 0.0;
    return (t - jump_times[m - 1]) / (md * (jump_times[m - 1] - t_prev)) + 1.0;
  }
  // Find k with t in [t_{k-1}, t_k), t_0 = 0.
  std::size_t k = 1;
  while (t >= jump_times[k - 1]) ++k;
  const double tk = jump_times[k - 1];
  const double tkm1 = k >= 2 ? jump_times[k - 2] : 0.0;
  return (t - tk) / (md * (tk - tkm1)) + static_cast<double>(k) / md;
}

GridPath path_on_grid(const Theta& theta, const PathSkeleton& skeleton,
                      std::span<const double> grid) {
  theta.validate();
  const bool time_changed = skeleton.model == Model::Mcogarch;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw std::domain_error("path_on_grid: grid points must lie in [0,1]");
    }
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw std::domain_error("path_on_grid: grid must be sorted");
    }
  }

  auto clock = [&](double t) {
    return time_changed ? time_change_eval(skeleton.jump_times, t) : t;
  };

  GridPath out;
  out.g.reserve(grid.size());
  out.h.reserve(grid.size());

  // Recover post-jump volatilities from the skeleton's pre-jump chain. The
  // jump sizes come back from z_k = x_k / sqrt(h_k).
  std::vector<double> h_post(skeleton.d);
  for (std::size_t k = 0; k < skeleton.d; ++k) {
    const double z = skeleton.h[k] > 0.0 ? skeleton.x[k] / std::sqrt(skeleton.h[k]) : 0.0;
    h_post[k] = skeleton.h[k] * (1.0 + theta.lambda * z * z);
  }

  for (double t : grid) {
    // Index of the last jump at or before t (cadlag: the jump at t counts).
    std::size_t j = 0;
    while (j < skeleton.d && skeleton.jump_times[j] <= t) ++j;
    double g = 0.0;
    for (std::size_t k = 0; k < j; ++k) g += skeleton.x[k];
    const double t_base = j == 0 ? 0.0 : skeleton.jump_times[j - 1];
    const double h_base = j == 0 ? theta.h0 : h_post[j - 1];
    const double elapsed = clock(t) - clock(t_base);
    out.g.push_back(g);
    out.h.push_back(relax_volatility(theta, h_base, elapsed));
  }
  return out;
}

}  // namespace garchlim
