#pragma once

// Brute-force permutation oracle for the two-sided rank-sum test, used by
// both the unit suite and the acceptance suite. Enumerates all C(N, n1)
// rank assignments directly; independent of the library implementation.

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace wilcoxon_oracle {

struct ExactDist {
  std::map<long, long> counts;  // rank sum -> number of assignments
  long total = 0;
};

inline ExactDist exact_rank_sum_dist(int n1, int n2) {
  const int total = n1 + n2;
  ExactDist dist;
  std::vector<int> pick(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  for (;;) {
    long s = 0;
    for (int v : pick) s += v;
    dist.counts[s] += 1;
    dist.total += 1;
    int i = n1 - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == total - (n1 - 1 - i)) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n1; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return dist;
}

// P(|R' - mu| >= |R - mu|) over all assignments.
inline double exact_two_sided_p(const ExactDist& dist, int n1, int n2, long rank_sum) {
  const double mu = static_cast<double>(n1) * (n1 + n2 + 1) / 2.0;
  const double dev = std::fabs(static_cast<double>(rank_sum) - mu);
  long tail = 0;
  for (const auto& [s, c] : dist.counts) {
    if (std::fabs(static_cast<double>(s) - mu) >= dev - 1e-12) tail += c;
  }
  return static_cast<double>(tail) / static_cast<double>(dist.total);
}

// Normal-approximation p for untied ranks with first-sample rank sum R.
inline double normal_p_for_rank_sum(int n1, int n2, long rank_sum) {
  const double dn1 = n1, dn2 = n2, dn = n1 + n2;
  const double w = (static_cast<double>(rank_sum) - dn1 * (dn + 1.0) / 2.0) /
                   std::sqrt(dn1 * dn2 * (dn + 1.0) / 12.0);
  return std::erfc(std::fabs(w) / std::sqrt(2.0));
}

}  // namespace wilcoxon_oracle
