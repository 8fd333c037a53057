#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "likelihood.hpp"

namespace garchlim {

struct LrTableRow {
  std::string theta_label;
  std::string law;
  Model model = Model::Cogarch;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  double q25 = 0.0, q50 = 0.0, q75 = 0.0;
};

struct WilcoxonRow {
  std::string theta_label;
  std::string law;
  std::size_t sample_size = 0;
  std::uint64_t seed_cogarch = 0;
  std::uint64_t seed_mcogarch = 0;
  double w = 0.0;
  double p = 1.0;
};

struct DiagCheck {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct DiagnosticsReport {
  std::vector<DiagCheck> checks;
  bool all_pass() const;
};

// Seed for the (theta row, law, model) cell. With share_seed the model index
// is dropped from the key, so both models consume identical skeleton
// randomness (common random numbers).
std::uint64_t cell_seed(const ExperimentConfig& cfg, std::size_t theta_idx, std::size_t law_idx,
                        Model model);

// Likelihood-ratio batch for one table cell at the largest configured size.
LrBatch compute_cell_batch(const ExperimentConfig& cfg, std::size_t theta_idx,
                           std::size_t law_idx, Model model);

// Quantile table over all (theta, law, model) cells at the largest sample
// size; writes lr_table.csv and lr_table.txt under cfg.output_dir.
std::vector<LrTableRow> run_lr_table(const ExperimentConfig& cfg);

// Rank-sum comparison of the two models' ratio batches at every configured
// sample size (smaller sizes are prefixes of the largest batch); writes
// wilcoxon_table.csv and wilcoxon_table.txt.
std::vector<WilcoxonRow> run_wilcoxon_table(const ExperimentConfig& cfg);

// Bundled invariant checks: g-grid bounds, identity-gap scan over the theta
// grid, thinning-bound table, interpolation-identity spot checks. Writes
// diagnostics.csv.
DiagnosticsReport run_diagnostics(const ExperimentConfig& cfg);

struct HellingerGapRow {
  std::string theta1_label;
  std::string theta2_label;
  std::string law;
  double zeta = 0.5;
  double gap = 0.0;
  double tolerance = 0.0;
};

// Identity-gap records for (theta0, theta) over the configured grid plus a
// g-evaluation grid; writes hellinger_gap.csv and g_grid.csv.
std::vector<HellingerGapRow> run_hellinger_gap(const ExperimentConfig& cfg, double zeta);

struct ThinningRow {
  long n = 0;
  double p_n = 0.0;
  double gamma = 0.0;
  double bound = 0.0;
  double empirical_tv = 0.0;
  double mc_error = 0.0;
  bool pass = false;
};

// Empirical jump-count law vs the Poisson limit for n in {10^3..10^6} with
// n * p_n = gamma; writes thinning.csv.
std::vector<ThinningRow> run_thinning_check(const ExperimentConfig& cfg);

// Audit dump of simulated skeletons, one CSV row per replicate.
void write_skeleton_csv(const std::string& path, Model model, const Theta& theta, double gamma,
                        const JumpLaw& law, std::size_t count, std::uint64_t seed);

// Ratio batch serialization: '#'-prefixed JSON header line, then
// 'replicate,ratio' rows.
void write_lr_batch_csv(const std::string& path, const LrBatch& batch);

}  // namespace garchlim
