#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "error.hpp"
#include "special.hpp"

namespace garchlim {

double quantile(std::span<const double> samples, double p) {
  std::vector<double> copy(samples.begin(), samples.end());
  const double probs[] = {p};
  return quantiles(copy, probs)[0];
}

std::vector<double> quantiles(std::span<const double> samples, std::span<const double> probs) {
  if (samples.empty()) throw std::domain_error("quantiles: empty sample");
  for (double p : probs) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantiles: probs must be in (0,1)");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) {
    const double pos = p * static_cast<double>(n - 1);  // 0-based fractional index
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    const double q = lo + 1 < n ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]) : sorted[lo];
    out.push_back(q);
  }
  return out;
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw std::domain_error("wilcoxon: both samples must be nonempty");
  const std::size_t n1 = x.size(), n2 = y.size(), n = n1 + n2;

  // Pool, sort, assign midranks.
  std::vector<std::pair<double, bool>> pooled;  // (value, belongs to x)
  pooled.reserve(n);
  for (double v : x) pooled.emplace_back(v, true);
  for (double v : y) pooled.emplace_back(v, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  double rank_sum_x = 0.0;
  double tie_term = 0.0;
  std::size_t tie_groups = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[j + 1].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i + 1);
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) {
      if (pooled[k].second) rank_sum_x += midrank;
    }
    if (t >= 2.0) {
      tie_term += t * t * t - t;
      ++tie_groups;
    }
    i = j + 1;
  }

  const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(n);
  const double variance =
      dn1 * dn2 * (dn + 1.0) / 12.0 - dn1 * dn2 * tie_term / (12.0 * dn * (dn - 1.0));
  if (!(variance > 0.0)) {
    throw DegenerateSampleError(
        "wilcoxon: pooled sample entirely tied (use the W = 0, p = 1 convention)");
  }

  WilcoxonResult res;
  res.n1 = n1;
  res.n2 = n2;
  res.tie_groups = tie_groups;
  res.w_standardized = (rank_sum_x - dn1 * (dn + 1.0) / 2.0) / std::sqrt(variance);
  res.p_two_sided = std::erfc(std::fabs(res.w_standardized) / std::sqrt(2.0));
  return res;
}

double thinning_bound(double n, double p_n, double gamma, double tv_qn_q) {
  if (!(n >= 1.0) || !(p_n > 0.0 && p_n < 1.0) || !(gamma > 0.0) ||
      !(tv_qn_q >= 0.0 && tv_qn_q <= 1.0)) {
    throw std::domain_error("thinning_bound: invalid arguments");
  }
  const double np = n * p_n;
  return std::sqrt(3.0 * n * p_n * p_n) + 3.0 * std::fabs(np - gamma) + 3.0 * np * tv_qn_q;
}

double kolmogorov_distance(std::span<const double> samples,
                           const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("kolmogorov_distance: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace garchlim
