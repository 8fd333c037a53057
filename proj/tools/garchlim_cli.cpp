// garchlim command line runner; talks to the shared library through the C API.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "garchlim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitBadConfig = 2;

struct CommonOpts {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t samples = 0;
  std::string law;
  bool share_seed = false;
  std::string out_dir;
  unsigned threads = 0;
  bool threads_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config, "experiment config file");
  cmd->add_option("--seed", opts.seed, "master seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
  cmd->add_option("--samples", opts.samples, "Monte Carlo batch size");
  cmd->add_option("--law", opts.law, "jump law spec (normal|cauchy:a=..|mixture|gengamma:..)");
  cmd->add_flag("--share-seed", opts.share_seed,
                "share skeleton randomness between the two models");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = auto)")
      ->each([&](const std::string&) { opts.threads_set = true; });
}

[[noreturn]] void die(garchlim_status status) {
  std::fprintf(stderr, "error: %s\n", garchlim_last_error());
  std::exit(status == GARCHLIM_ERR_CONFIG ? kExitBadConfig : kExitInvariantFailure);
}

void check(garchlim_status status) {
  if (status != GARCHLIM_OK) die(status);
}

garchlim_experiment* make_experiment(const CommonOpts& opts) {
  garchlim_experiment* exp = nullptr;
  if (!opts.config.empty()) {
    check(garchlim_experiment_load(opts.config.c_str(), &exp));
  } else {
    check(garchlim_experiment_create_default(&exp));
  }
  if (opts.seed_set) check(garchlim_experiment_set_seed(exp, opts.seed));
  if (opts.samples > 0) check(garchlim_experiment_set_samples(exp, opts.samples));
  if (!opts.law.empty()) check(garchlim_experiment_set_law(exp, opts.law.c_str()));
  if (opts.share_seed) check(garchlim_experiment_set_share_seed(exp, 1));
  if (!opts.out_dir.empty()) check(garchlim_experiment_set_output_dir(exp, opts.out_dir.c_str()));
  if (opts.threads_set) check(garchlim_experiment_set_threads(exp, opts.threads));
  return exp;
}

// Prints a CSV emitted under the experiment's output directory, turning
// status columns into [PASS]/[FAIL] prefixes when present.
void print_csv_report(const garchlim_experiment* exp, const char* filename) {
  std::string path = std::string(garchlim_experiment_output_dir(exp)) + "/" + filename;
  std::FILE* f = std::fopen(path.c_str(), "r");
  if (f == nullptr) return;
  char line[4096];
  bool header = true;
  while (std::fgets(line, sizeof line, f) != nullptr) {
    if (header) {
      header = false;
      continue;
    }
    std::string s(line);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    const bool fail = s.find(",fail") != std::string::npos;
    const bool pass = s.find(",pass") != std::string::npos;
    if (pass || fail) {
      std::printf("[%s] %s\n", fail ? "FAIL" : "PASS", s.c_str());
    } else {
      std::printf("%s\n", s.c_str());
    }
  }
  std::fclose(f);
}

bool parse_theta4(const std::string& text, double out[4]) {
  double v[4];
  char tail = '\0';
  const int got = std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &v[3],
                              &tail);
  if (got != 4) return false;
  std::memcpy(out, v, sizeof v);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COGARCH / MCOGARCH simulation and likelihood-ratio comparison toolkit"};
  app.require_subcommand(1);

  // simulate
  CommonOpts sim_opts;
  std::string sim_model = "cogarch";
  std::string sim_theta = "2,1,1,0.1";
  std::size_t sim_count = 100;
  double sim_gamma = 0.0;
  auto* sim = app.add_subcommand("simulate", "dump simulated path skeletons to CSV");
  add_common(sim, sim_opts);
  sim->add_option("--model", sim_model, "cogarch|mcogarch");
  sim->add_option("--theta", sim_theta, "h0,beta,alpha,lambda");
  sim->add_option("--count", sim_count, "number of skeletons");
  sim->add_option("--gamma", sim_gamma, "jump intensity");

  // lr-table
  CommonOpts lr_opts;
  auto* lr = app.add_subcommand("lr-table", "likelihood-ratio quantile table");
  add_common(lr, lr_opts);

  // wilcoxon-table
  CommonOpts wx_opts;
  auto* wx = app.add_subcommand("wilcoxon-table",
                                "rank-sum comparison of COGARCH vs MCOGARCH ratio batches");
  add_common(wx, wx_opts);

  // hellinger-gap
  CommonOpts hg_opts;
  double hg_zeta = 0.5;
  std::string hg_theta1, hg_theta2;
  auto* hg = app.add_subcommand("hellinger-gap", "d = 1 identity-gap records and g grids");
  add_common(hg, hg_opts);
  hg->add_option("--zeta", hg_zeta, "Hellinger order in (0,1)");
  hg->add_option("--theta1", hg_theta1, "explicit first parameter point h0,beta,alpha,lambda");
  hg->add_option("--theta2", hg_theta2, "explicit second parameter point");

  // thinning-check
  CommonOpts th_opts;
  auto* th = app.add_subcommand("thinning-check",
                                "empirical jump-count law vs the Poisson limit bound");
  add_common(th, th_opts);

  // diagnostics
  CommonOpts dg_opts;
  auto* dg = app.add_subcommand("diagnostics", "bundled invariant checks");
  add_common(dg, dg_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  if (sim->parsed()) {
    garchlim_experiment* exp = make_experiment(sim_opts);
    if (sim_gamma > 0.0) check(garchlim_experiment_set_gamma(exp, sim_gamma));
    double theta[4];
    if (!parse_theta4(sim_theta, theta)) {
      std::fprintf(stderr, "error: --theta expects h0,beta,alpha,lambda\n");
      return kExitBadConfig;
    }
    const garchlim_model model = (sim_model == "mcogarch" || sim_model == "MCOGARCH")
                                     ? GARCHLIM_MODEL_MCOGARCH
                                     : GARCHLIM_MODEL_COGARCH;
    check(garchlim_experiment_dump_skeletons(exp, model, theta, sim_count));
    garchlim_experiment_free(exp);
    std::printf("wrote skeletons.csv\n");
    return kExitOk;
  }

  if (lr->parsed()) {
    garchlim_experiment* exp = make_experiment(lr_opts);
    check(garchlim_experiment_run_lr_table(exp));
    garchlim_experiment_free(exp);
    std::printf("wrote lr_table.csv and lr_table.txt\n");
    return kExitOk;
  }

  if (wx->parsed()) {
    garchlim_experiment* exp = make_experiment(wx_opts);
    check(garchlim_experiment_run_wilcoxon_table(exp));
    garchlim_experiment_free(exp);
    std::printf("wrote wilcoxon_table.csv and wilcoxon_table.txt\n");
    return kExitOk;
  }

  if (hg->parsed()) {
    if (!hg_theta1.empty() || !hg_theta2.empty()) {
      double t1[4], t2[4];
      if (!parse_theta4(hg_theta1, t1) || !parse_theta4(hg_theta2, t2)) {
        std::fprintf(stderr, "error: --theta1/--theta2 expect h0,beta,alpha,lambda\n");
        return kExitBadConfig;
      }
      garchlim_law* law = nullptr;
      check(garchlim_law_parse(hg_opts.law.empty() ? "normal" : hg_opts.law.c_str(), &law));
      double gap = 0.0, budget = 0.0;
      check(garchlim_d1_identity_gap(t1, t2, hg_zeta, law, 1e-10, 1e-9, &gap, &budget));
      garchlim_law_free(law);
      std::printf("zeta=%.17g gap=%.17g tolerance=%.17g\n", hg_zeta, gap, budget);
      return kExitOk;
    }
    garchlim_experiment* exp = make_experiment(hg_opts);
    check(garchlim_experiment_run_hellinger_gap(exp, hg_zeta));
    garchlim_experiment_free(exp);
    std::printf("wrote hellinger_gap.csv and g_grid.csv\n");
    return kExitOk;
  }

  if (th->parsed()) {
    garchlim_experiment* exp = make_experiment(th_opts);
    int failures = 0;
    check(garchlim_experiment_run_thinning_check(exp, &failures));
    print_csv_report(exp, "thinning.csv");
    garchlim_experiment_free(exp);
    std::printf("wrote thinning.csv (%d failing rows)\n", failures);
    return failures == 0 ? kExitOk : kExitInvariantFailure;
  }

  if (dg->parsed()) {
    garchlim_experiment* exp = make_experiment(dg_opts);
    int failures = 0;
    check(garchlim_experiment_run_diagnostics(exp, &failures));
    print_csv_report(exp, "diagnostics.csv");
    garchlim_experiment_free(exp);
    std::printf("wrote diagnostics.csv (%d failing checks)\n", failures);
    return failures == 0 ? kExitOk : kExitInvariantFailure;
  }

  return kExitOk;
}
