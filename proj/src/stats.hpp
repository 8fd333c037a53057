#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace garchlim {

// Empirical quantile with linear interpolation between order statistics: the
// p-quantile sits at 1-based fractional index p (n - 1) + 1 of the sorted
// sample.
double quantile(std::span<const double> samples, double p);
std::vector<double> quantiles(std::span<const double> samples, std::span<const double> probs);

struct WilcoxonResult {
  double w_standardized = 0.0;
  double p_two_sided = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t tie_groups = 0;  // number of pooled groups of size >= 2
};

// Two-sided Wilcoxon rank-sum (Mann-Whitney) test with midranks and the
// tie-corrected normal approximation, no continuity correction:
//   W = (R_x - n1 (N+1)/2) / sqrt(n1 n2 (N+1)/12 - n1 n2 T / (12 N (N-1))),
// with T = sum over tie groups of (t^3 - t) and p = 2 (1 - Phi(|W|)).
// Throws DegenerateSampleError when the pooled sample is entirely tied
// (callers wanting a value use the documented W = 0, p = 1 convention).
WilcoxonResult wilcoxon_rank_sum(std::span<const double> x, std::span<const double> y);

// Upper bound on the total-variation distance between the thinned point
// process and its Poisson limit:
//   sqrt(3 n p_n^2) + 3 |n p_n - gamma| + 3 n p_n tv(Q_n, Q).
double thinning_bound(double n, double p_n, double gamma, double tv_qn_q);

// Kolmogorov distance between the empirical CDF of a sample and an analytic
// CDF (supremum over sample points of both one-sided deviations).
double kolmogorov_distance(std::span<const double> samples,
                           const std::function<double(double)>& cdf);

}  // namespace garchlim
