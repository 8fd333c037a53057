#include <doctest.h>

#include <cmath>
#include <vector>

#include "error.hpp"
#include "likelihood.hpp"
#include "stats.hpp"

using namespace garchlim;

namespace {

const Theta kTheta0{2.0, 1.0, 1.0, 0.1};

PathSkeleton random_skeleton(Model model, const Theta& theta, const JumpLaw& law,
                             std::uint64_t seed) {
  for (std::uint64_t r = 0;; ++r) {
    RngStream stream = RngStream::substream(seed, r);
    PathSkeleton skel = simulate_skeleton(model, theta, 4.0, law, stream);
    if (skel.d >= 1) return skel;
  }
}

}  // namespace

TEST_CASE("inversion of a hand-built one-jump skeleton") {
  PathSkeleton skel;
  skel.model = Model::Cogarch;
  skel.d = 1;
  skel.jump_times = {0.5};
  skel.w = {1.0};
  skel.h = {1.3678794411714423};
  skel.x = {1.17};

  const Inversion inv = invert_innovations(Model::Cogarch, kTheta0, skel);
  REQUIRE(inv.z.size() == 1);
  // 1.17 / sqrt(h1) and -log(h1)/2, h1 = (b/a)(1-e^{-1}) + e^{-1} h0
  CHECK(inv.z[0] == doctest::Approx(1.000372974588285).epsilon(1e-12));
  CHECK(inv.log_jacobian == doctest::Approx(-0.15663084375911143).epsilon(1e-12));

  skel.x = {0.0};
  CHECK(invert_innovations(Model::Cogarch, kTheta0, skel).z[0] == 0.0);
}

TEST_CASE("round trip: invert then regenerate the increments") {
  const JumpLaw law = JumpLaw::standard_normal();
  for (Model model : {Model::Cogarch, Model::Mcogarch}) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const PathSkeleton skel = random_skeleton(model, kTheta0, law, 1000 + seed);
      const Inversion inv = invert_innovations(model, kTheta0, skel);
      const std::vector<double> h =
          model == Model::Cogarch ? cogarch_volatility_chain(kTheta0, skel.w, inv.z)
                                  : mcogarch_volatility_chain(kTheta0, skel.d, inv.z);
      for (std::size_t k = 0; k < skel.d; ++k) {
        const double x_back = std::sqrt(h[k]) * inv.z[k];
        REQUIRE(std::fabs(x_back - skel.x[k]) <=
                1e-12 * std::max(1.0, std::fabs(skel.x[k])));
      }
    }
  }
}

TEST_CASE("log density: empty skeleton, frozen example, exact self-ratio") {
  const JumpLaw law = JumpLaw::standard_normal();
  PathSkeleton empty;
  empty.model = Model::Cogarch;
  CHECK(log_density(Model::Cogarch, kTheta0, empty, law) == 0.0);

  PathSkeleton skel;
  skel.model = Model::Cogarch;
  skel.d = 1;
  skel.jump_times = {0.5};
  skel.w = {1.0};
  skel.h = {1.3678794411714423};
  skel.x = {1.0};
  // log phi(1/sqrt(h1)) - log(h1)/2 evaluated by scalar arithmetic
  CHECK(log_density(Model::Cogarch, kTheta0, skel, law) ==
        doctest::Approx(-1.4410986662787866).epsilon(1e-12));

  const PathSkeleton rnd = random_skeleton(Model::Cogarch, kTheta0, law, 42);
  CHECK(log_density(Model::Cogarch, kTheta0, rnd, law) -
            log_density(Model::Cogarch, kTheta0, rnd, law) ==
        0.0);
  CHECK(likelihood_ratio(Model::Cogarch, kTheta0, kTheta0, rnd, law) == 1.0);
}

TEST_CASE("log density equals the forward chain evaluated at recovered innovations") {
  const JumpLaw law = JumpLaw::cauchy(1.0);
  const Theta theta{0.4, 1.0, 1.0, 0.1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PathSkeleton skel = random_skeleton(Model::Cogarch, kTheta0, law, 7000 + seed);
    const Inversion inv = invert_innovations(Model::Cogarch, theta, skel);
    const auto h = cogarch_volatility_chain(theta, skel.w, inv.z);
    double expected = 0.0;
    for (std::size_t k = 0; k < skel.d; ++k) {
      expected += law.log_density(inv.z[k]) - 0.5 * std::log(h[k]);
    }
    CHECK(log_density(Model::Cogarch, theta, skel, law) ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("swapping the roles of theta and theta0 inverts the ratio") {
  const JumpLaw law = JumpLaw::symmetric_mixture();
  const Theta theta{10.0, 1.0, 1.0, 0.1};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PathSkeleton skel = random_skeleton(Model::Mcogarch, kTheta0, law, 8100 + seed);
    const double fwd = likelihood_ratio(Model::Mcogarch, theta, kTheta0, skel, law);
    const double bwd = likelihood_ratio(Model::Mcogarch, kTheta0, theta, skel, law);
    // The log differences negate exactly, so the product deviates from one
    // only by the final exponentiations.
    CHECK(fwd * bwd == doctest::Approx(1.0).epsilon(1e-14));
    const double ld_f = log_density(Model::Mcogarch, theta, skel, law) -
                        log_density(Model::Mcogarch, kTheta0, skel, law);
    const double ld_b = log_density(Model::Mcogarch, kTheta0, skel, law) -
                        log_density(Model::Mcogarch, theta, skel, law);
    CHECK(ld_f == -ld_b);
  }
}

TEST_CASE("lr batches: identity at theta0, determinism across thread counts") {
  const JumpLaw law = JumpLaw::standard_normal();
  const LrBatch self = lr_sample(Model::Cogarch, kTheta0, kTheta0, 4.0, law, 5000, 321, 2);
  for (double r : self.samples) REQUIRE(r == 1.0);

  const Theta theta{0.4, 1.0, 1.0, 0.1};
  const LrBatch one = lr_sample(Model::Mcogarch, theta, kTheta0, 4.0, law, 20000, 99, 1);
  const LrBatch two = lr_sample(Model::Mcogarch, theta, kTheta0, 4.0, law, 20000, 99, 2);
  REQUIRE(one.samples == two.samples);
  for (double r : one.samples) REQUIRE(r > 0.0);
}

TEST_CASE("lr batch mean sits near one and quantiles near the reference rows") {
  const JumpLaw law = JumpLaw::standard_normal();
  const Theta theta11{0.4, 1.0, 1.0, 0.1};
  const LrBatch batch = lr_sample(Model::Cogarch, theta11, kTheta0, 4.0, law, 100000, 2468);

  double mean = 0.0, m2 = 0.0;
  for (double r : batch.samples) {
    mean += r;
    m2 += r * r;
  }
  const double n = static_cast<double>(batch.samples.size());
  mean /= n;
  const double se = std::sqrt((m2 / n - mean * mean) / n);
  CHECK(std::fabs(mean - 1.0) <= 3.0 * se);

  const double probs[] = {0.25, 0.5, 0.75};
  const auto q = quantiles(batch.samples, probs);
  CHECK(q[0] == doctest::Approx(0.1081).epsilon(0.2));
  CHECK(q[1] == doctest::Approx(0.5560).epsilon(0.05));
  CHECK(q[2] == doctest::Approx(1.3888).epsilon(0.03));
}

TEST_CASE("degenerate model is rejected") {
  const JumpLaw law = JumpLaw::standard_normal();
  PathSkeleton skel;
  skel.model = Model::Cogarch;
  skel.d = 1;
  skel.jump_times = {0.5};
  skel.w = {0.5};
  skel.h = {1.0};
  skel.x = {0.3};
  CHECK_THROWS_AS(invert_innovations(Model::Cogarch, Theta{0.0, 0.0, 1.0, 0.1}, skel),
                  SingularModelError);
  CHECK_THROWS_AS(lr_sample(Model::Cogarch, kTheta0, kTheta0, -1.0, law, 10, 1),
                  std::domain_error);
  CHECK_THROWS_AS(lr_sample(Model::Cogarch, kTheta0, kTheta0, 4.0, law, 0, 1),
                  std::domain_error);
}
