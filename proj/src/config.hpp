#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "processes.hpp"

namespace garchlim {

// Experiment design: parameter grid, laws, rate, batch sizes, seeding and
// output location. Defaults reproduce the reference study design exactly
// (theta0 = (2,1,1,0.1), the eight one-component perturbations, three laws,
// gamma = 4, batch sizes 10^4..10^6).
struct ExperimentConfig {
  Theta theta0{2.0, 1.0, 1.0, 0.1};
  std::vector<std::pair<std::string, Theta>> thetas;
  std::vector<std::string> laws{"normal", "cauchy:a=1", "mixture"};
  double gamma = 4.0;
  std::vector<std::size_t> sample_sizes{10000, 100000, 1000000};
  std::uint64_t master_seed = 20101001;
  std::string output_dir = "out";
  std::vector<Model> models{Model::Cogarch, Model::Mcogarch};
  bool share_seed = false;
  unsigned threads = 0;  // 0 = hardware concurrency

  static ExperimentConfig defaults();

  // Flat key = value file; '#' starts a comment. Keys:
  //   theta0, theta.<label> (h0,beta,alpha,lambda), laws (';'-separated),
  //   gamma, sample_sizes, master_seed, output_dir, models, share_seed,
  //   threads.
  // theta.<label> lines replace the default grid in file order.
  static ExperimentConfig load(const std::string& path);

  void validate() const;
};

Theta parse_theta(const std::string& text);

}  // namespace garchlim
