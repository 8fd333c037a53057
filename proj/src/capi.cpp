#include "garchlim.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "experiment.hpp"
#include "hellinger.hpp"
#include "likelihood.hpp"
#include "stats.hpp"

using namespace garchlim;

namespace {

thread_local std::string g_last_error;

garchlim_status fail(garchlim_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Runs `fn`, translating library exceptions into status codes.
template <typename Fn>
garchlim_status guarded(Fn&& fn) {
  try {
    fn();
    return GARCHLIM_OK;
  } catch (const ConfigError& e) {
    return fail(GARCHLIM_ERR_CONFIG, e.what());
  } catch (const ToleranceError& e) {
    return fail(GARCHLIM_ERR_TOLERANCE, e.what());
  } catch (const SingularModelError& e) {
    return fail(GARCHLIM_ERR_SINGULAR, e.what());
  } catch (const DegenerateSampleError& e) {
    return fail(GARCHLIM_ERR_DEGENERATE, e.what());
  } catch (const IoError& e) {
    return fail(GARCHLIM_ERR_IO, e.what());
  } catch (const std::domain_error& e) {
    return fail(GARCHLIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GARCHLIM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(GARCHLIM_ERR_INTERNAL, e.what());
  }
}

Theta to_theta(const double t[4]) { return Theta{t[0], t[1], t[2], t[3]}; }

Model to_model(garchlim_model m) {
  return m == GARCHLIM_MODEL_COGARCH ? Model::Cogarch : Model::Mcogarch;
}

garchlim_status require_args(bool ok) {
  return ok ? GARCHLIM_OK : fail(GARCHLIM_ERR_INVALID_ARGUMENT, "null argument");
}

}  // namespace

struct garchlim_law {
  JumpLaw law;
};
struct garchlim_skeleton {
  PathSkeleton skeleton;
};
struct garchlim_lr_batch {
  LrBatch batch;
};
struct garchlim_experiment {
  ExperimentConfig cfg;
};

extern "C" {

const char* garchlim_version(void) { return "1.0.0"; }

const char* garchlim_last_error(void) { return g_last_error.c_str(); }

garchlim_status garchlim_law_parse(const char* spec, garchlim_law** out) {
  if (auto s = require_args(spec && out)) return s;
  return guarded([&] { *out = new garchlim_law{JumpLaw::parse(spec)}; });
}

void garchlim_law_free(garchlim_law* law) { delete law; }

garchlim_status garchlim_law_density(const garchlim_law* law, double z, double* out) {
  if (auto s = require_args(law && out)) return s;
  return guarded([&] { *out = law->law.density(z); });
}

garchlim_status garchlim_law_cdf(const garchlim_law* law, double z, double* out) {
  if (auto s = require_args(law && out)) return s;
  return guarded([&] { *out = law->law.cdf(z); });
}

garchlim_status garchlim_law_sample(const garchlim_law* law, size_t count, uint64_t seed,
                                    double* out) {
  if (auto s = require_args(law && out)) return s;
  return guarded([&] {
    RngStream stream(seed);
    law->law.sample(count, stream, out);
  });
}

garchlim_status garchlim_parametrize(garchlim_scheme scheme, const double theta[4], long n,
                                     double coeffs_out[4]) {
  if (auto s = require_args(theta && coeffs_out)) return s;
  return guarded([&] {
    const Scheme sch = scheme == GARCHLIM_SCHEME_H0   ? Scheme::H0
                       : scheme == GARCHLIM_SCHEME_KV ? Scheme::KV
                                                      : Scheme::M;
    const GarchCoeffs c = parametrize(sch, to_theta(theta), n);
    coeffs_out[0] = c.h0n;
    coeffs_out[1] = c.betan;
    coeffs_out[2] = c.alphan;
    coeffs_out[3] = c.lambdan;
  });
}

garchlim_status garchlim_garch_path(const double coeffs[4], const double* innovations, size_t n,
                                    double* g_out, double* h_out) {
  if (auto s = require_args(coeffs && innovations && g_out && h_out)) return s;
  return guarded([&] {
    const GarchPath path = garch_path(GarchCoeffs{coeffs[0], coeffs[1], coeffs[2], coeffs[3]},
                                      std::span<const double>(innovations, n));
    std::memcpy(g_out, path.g.data(), (n + 1) * sizeof(double));
    std::memcpy(h_out, path.h.data(), (n + 1) * sizeof(double));
  });
}

garchlim_status garchlim_thinned_innovations(size_t n, double p_n, double gamma,
                                             const garchlim_law* law, uint64_t seed,
                                             double* out) {
  if (auto s = require_args(law && out)) return s;
  return guarded([&] {
    RngStream stream(seed);
    const auto z = thinned_innovations(ThinningSpec{n, p_n, gamma}, law->law, stream);
    std::memcpy(out, z.data(), n * sizeof(double));
  });
}

garchlim_status garchlim_time_change_eval(const double* jump_times, size_t m, double t,
                                          double* out) {
  if (auto s = require_args(out && (jump_times || m == 0))) return s;
  return guarded([&] { *out = time_change_eval(std::span<const double>(jump_times, m), t); });
}

garchlim_status garchlim_skeleton_simulate(garchlim_model model, const double theta[4],
                                           double gamma, const garchlim_law* law, uint64_t seed,
                                           garchlim_skeleton** out) {
  if (auto s = require_args(theta && law && out)) return s;
  return guarded([&] {
    RngStream stream(seed);
    *out = new garchlim_skeleton{
        simulate_skeleton(to_model(model), to_theta(theta), gamma, law->law, stream)};
  });
}

void garchlim_skeleton_free(garchlim_skeleton* skeleton) { delete skeleton; }

size_t garchlim_skeleton_jump_count(const garchlim_skeleton* skeleton) {
  return skeleton ? skeleton->skeleton.d : 0;
}

garchlim_status garchlim_skeleton_data(const garchlim_skeleton* skeleton,
                                       garchlim_skeleton_field field, const double** data,
                                       size_t* len) {
  if (auto s = require_args(skeleton && data && len)) return s;
  const PathSkeleton& sk = skeleton->skeleton;
  const std::vector<double>* v = nullptr;
  switch (field) {
    case GARCHLIM_SKEL_JUMP_TIMES: v = &sk.jump_times; break;
    case GARCHLIM_SKEL_SPACINGS: v = &sk.w; break;
    case GARCHLIM_SKEL_VOLATILITIES: v = &sk.h; break;
    case GARCHLIM_SKEL_INCREMENTS: v = &sk.x; break;
  }
  if (v == nullptr) return fail(GARCHLIM_ERR_INVALID_ARGUMENT, "unknown skeleton field");
  *data = v->data();
  *len = v->size();
  return GARCHLIM_OK;
}

garchlim_status garchlim_skeleton_on_grid(const garchlim_skeleton* skeleton,
                                          const double theta[4], const double* grid,
                                          size_t grid_len, double* g_out, double* h_out) {
  if (auto s = require_args(skeleton && theta && grid && g_out && h_out)) return s;
  return guarded([&] {
    const GridPath path = path_on_grid(to_theta(theta), skeleton->skeleton,
                                       std::span<const double>(grid, grid_len));
    std::memcpy(g_out, path.g.data(), grid_len * sizeof(double));
    std::memcpy(h_out, path.h.data(), grid_len * sizeof(double));
  });
}

garchlim_status garchlim_invert_innovations(garchlim_model model, const double theta[4],
                                            const garchlim_skeleton* skeleton, double* z_out,
                                            double* log_jacobian_out) {
  if (auto s = require_args(theta && skeleton && z_out && log_jacobian_out)) return s;
  return guarded([&] {
    const Inversion inv = invert_innovations(to_model(model), to_theta(theta),
                                             skeleton->skeleton);
    std::memcpy(z_out, inv.z.data(), inv.z.size() * sizeof(double));
    *log_jacobian_out = inv.log_jacobian;
  });
}

garchlim_status garchlim_log_density(garchlim_model model, const double theta[4],
                                     const garchlim_skeleton* skeleton,
                                     const garchlim_law* law, double* out) {
  if (auto s = require_args(theta && skeleton && law && out)) return s;
  return guarded([&] {
    *out = log_density(to_model(model), to_theta(theta), skeleton->skeleton, law->law);
  });
}

garchlim_status garchlim_likelihood_ratio(garchlim_model model, const double theta[4],
                                          const double theta0[4],
                                          const garchlim_skeleton* skeleton,
                                          const garchlim_law* law, double* out) {
  if (auto s = require_args(theta && theta0 && skeleton && law && out)) return s;
  return guarded([&] {
    *out = likelihood_ratio(to_model(model), to_theta(theta), to_theta(theta0),
                            skeleton->skeleton, law->law);
  });
}

garchlim_status garchlim_lr_sample(garchlim_model model, const double theta[4],
                                   const double theta0[4], double gamma,
                                   const garchlim_law* law, size_t count, uint64_t seed,
                                   unsigned threads, garchlim_lr_batch** out) {
  if (auto s = require_args(theta && theta0 && law && out)) return s;
  return guarded([&] {
    *out = new garchlim_lr_batch{lr_sample(to_model(model), to_theta(theta), to_theta(theta0),
                                           gamma, law->law, count, seed, threads)};
  });
}

void garchlim_lr_batch_free(garchlim_lr_batch* batch) { delete batch; }

garchlim_status garchlim_lr_batch_samples(const garchlim_lr_batch* batch, const double** data,
                                          size_t* len) {
  if (auto s = require_args(batch && data && len)) return s;
  *data = batch->batch.samples.data();
  *len = batch->batch.samples.size();
  return GARCHLIM_OK;
}

garchlim_status garchlim_lr_batch_write_csv(const garchlim_lr_batch* batch, const char* path) {
  if (auto s = require_args(batch && path)) return s;
  return guarded([&] { write_lr_batch_csv(path, batch->batch); });
}

garchlim_status garchlim_g_eval(const garchlim_law* law, double zeta, double h, double abs_tol,
                                double rel_tol, double* out) {
  if (auto s = require_args(law && out)) return s;
  return guarded([&] {
    HellingerConfig cfg;
    cfg.zeta = zeta;
    cfg.quadrature_abs_tol = abs_tol;
    cfg.quadrature_rel_tol = rel_tol;
    *out = g_eval(law->law, zeta, h, cfg);
  });
}

garchlim_status garchlim_volatility_ratio(const double theta1[4], const double theta2[4],
                                          double w, double* out) {
  if (auto s = require_args(theta1 && theta2 && out)) return s;
  return guarded([&] { *out = volatility_ratio(to_theta(theta1), to_theta(theta2), w); });
}

garchlim_status garchlim_d1_identity_gap(const double theta1[4], const double theta2[4],
                                         double zeta, const garchlim_law* law, double abs_tol,
                                         double rel_tol, double* gap_out, double* budget_out) {
  if (auto s = require_args(theta1 && theta2 && law && gap_out && budget_out)) return s;
  return guarded([&] {
    HellingerConfig cfg;
    cfg.zeta = zeta;
    cfg.quadrature_abs_tol = abs_tol;
    cfg.quadrature_rel_tol = rel_tol;
    const IdentityGap gap = d1_identity_gap(to_theta(theta1), to_theta(theta2), zeta,
                                            law->law, cfg);
    *gap_out = gap.gap;
    *budget_out = gap.budget;
  });
}

garchlim_status garchlim_hellinger_transform_mc(garchlim_model model, size_t d,
                                                const double theta1[4], const double theta2[4],
                                                const double* w, double zeta,
                                                const garchlim_law* law, size_t count,
                                                uint64_t seed, double* estimate_out,
                                                double* std_error_out) {
  if (auto s = require_args(theta1 && theta2 && law && estimate_out && std_error_out)) return s;
  return guarded([&] {
    const std::span<const double> spacings =
        w == nullptr ? std::span<const double>{} : std::span<const double>(w, d);
    const McEstimate est = hellinger_transform_mc(to_model(model), d, to_theta(theta1),
                                                  to_theta(theta2), spacings, zeta, law->law,
                                                  count, seed);
    *estimate_out = est.value;
    *std_error_out = est.std_error;
  });
}

garchlim_status garchlim_quantiles(const double* samples, size_t n, const double* probs,
                                   size_t nprobs, double* out) {
  if (auto s = require_args(samples && probs && out)) return s;
  return guarded([&] {
    const auto q = quantiles(std::span<const double>(samples, n),
                             std::span<const double>(probs, nprobs));
    std::memcpy(out, q.data(), q.size() * sizeof(double));
  });
}

garchlim_status garchlim_wilcoxon_rank_sum(const double* x, size_t nx, const double* y,
                                           size_t ny, double* w_out, double* p_out) {
  if (auto s = require_args(x && y && w_out && p_out)) return s;
  try {
    const WilcoxonResult res =
        wilcoxon_rank_sum(std::span<const double>(x, nx), std::span<const double>(y, ny));
    *w_out = res.w_standardized;
    *p_out = res.p_two_sided;
    return GARCHLIM_OK;
  } catch (const DegenerateSampleError& e) {
    *w_out = 0.0;
    *p_out = 1.0;
    return fail(GARCHLIM_ERR_DEGENERATE, e.what());
  } catch (const std::exception& e) {
    return fail(GARCHLIM_ERR_INVALID_ARGUMENT, e.what());
  }
}

garchlim_status garchlim_thinning_bound(double n, double p_n, double gamma, double tv_qn_q,
                                        double* out) {
  if (auto s = require_args(out)) return s;
  return guarded([&] { *out = thinning_bound(n, p_n, gamma, tv_qn_q); });
}

garchlim_status garchlim_experiment_create_default(garchlim_experiment** out) {
  if (auto s = require_args(out)) return s;
  return guarded([&] { *out = new garchlim_experiment{ExperimentConfig::defaults()}; });
}

garchlim_status garchlim_experiment_load(const char* path, garchlim_experiment** out) {
  if (auto s = require_args(path && out)) return s;
  return guarded([&] { *out = new garchlim_experiment{ExperimentConfig::load(path)}; });
}

void garchlim_experiment_free(garchlim_experiment* experiment) { delete experiment; }

garchlim_status garchlim_experiment_set_seed(garchlim_experiment* experiment, uint64_t seed) {
  if (auto s = require_args(experiment)) return s;
  experiment->cfg.master_seed = seed;
  return GARCHLIM_OK;
}

garchlim_status garchlim_experiment_set_samples(garchlim_experiment* experiment,
                                                size_t samples) {
  if (auto s = require_args(experiment)) return s;
  if (samples < 2) return fail(GARCHLIM_ERR_CONFIG, "sample size must be >= 2");
  experiment->cfg.sample_sizes = {samples};
  return GARCHLIM_OK;
}

garchlim_status garchlim_experiment_set_law(garchlim_experiment* experiment, const char* spec) {
  if (auto s = require_args(experiment && spec)) return s;
  return guarded([&] {
    JumpLaw::parse(spec);
    experiment->cfg.laws = {spec};
  });
}

garchlim_status garchlim_experiment_set_share_seed(garchlim_experiment* experiment, int on) {
  if (auto s = require_args(experiment)) return s;
  experiment->cfg.share_seed = on != 0;
  return GARCHLIM_OK;
}

garchlim_status garchlim_experiment_set_gamma(garchlim_experiment* experiment, double gamma) {
  if (auto s = require_args(experiment)) return s;
  if (!(gamma > 0.0)) return fail(GARCHLIM_ERR_CONFIG, "gamma must be positive");
  experiment->cfg.gamma = gamma;
  return GARCHLIM_OK;
}

garchlim_status garchlim_experiment_set_output_dir(garchlim_experiment* experiment,
                                                   const char* dir) {
  if (auto s = require_args(experiment && dir)) return s;
  if (*dir == '\0') return fail(GARCHLIM_ERR_CONFIG, "output dir must be nonempty");
  experiment->cfg.output_dir = dir;
  return GARCHLIM_OK;
}

garchlim_status garchlim_experiment_set_threads(garchlim_experiment* experiment,
                                                unsigned threads) {
  if (auto s = require_args(experiment)) return s;
  experiment->cfg.threads = threads;
  return GARCHLIM_OK;
}

const char* garchlim_experiment_output_dir(const garchlim_experiment* experiment) {
  return experiment ? experiment->cfg.output_dir.c_str() : "";
}

garchlim_status garchlim_experiment_run_lr_table(garchlim_experiment* experiment) {
  if (auto s = require_args(experiment)) return s;
  return guarded([&] { run_lr_table(experiment->cfg); });
}

garchlim_status garchlim_experiment_run_wilcoxon_table(garchlim_experiment* experiment) {
  if (auto s = require_args(experiment)) return s;
  return guarded([&] { run_wilcoxon_table(experiment->cfg); });
}

garchlim_status garchlim_experiment_run_diagnostics(garchlim_experiment* experiment,
                                                    int* failures_out) {
  if (auto s = require_args(experiment && failures_out)) return s;
  return guarded([&] {
    const DiagnosticsReport report = run_diagnostics(experiment->cfg);
    int failures = 0;
    for (const auto& c : report.checks) {
      if (!c.pass) ++failures;
    }
    *failures_out = failures;
  });
}

garchlim_status garchlim_experiment_run_hellinger_gap(garchlim_experiment* experiment,
                                                      double zeta) {
  if (auto s = require_args(experiment)) return s;
  return guarded([&] { run_hellinger_gap(experiment->cfg, zeta); });
}

garchlim_status garchlim_experiment_run_thinning_check(garchlim_experiment* experiment,
                                                       int* failures_out) {
  if (auto s = require_args(experiment && failures_out)) return s;
  return guarded([&] {
    int failures = 0;
    for (const auto& row : run_thinning_check(experiment->cfg)) {
      if (!row.pass) ++failures;
    }
    *failures_out = failures;
  });
}

garchlim_status garchlim_experiment_dump_skeletons(garchlim_experiment* experiment,
                                                   garchlim_model model, const double theta[4],
                                                   size_t count) {
  if (auto s = require_args(experiment && theta)) return s;
  return guarded([&] {
    const auto& cfg = experiment->cfg;
    const JumpLaw law = JumpLaw::parse(cfg.laws.at(0));
    const std::filesystem::path path = std::filesystem::path(cfg.output_dir) / "skeletons.csv";
    write_skeleton_csv(path.string(), to_model(model), to_theta(theta), cfg.gamma, law, count,
                       cfg.master_seed);
  });
}

}  // extern "C"
