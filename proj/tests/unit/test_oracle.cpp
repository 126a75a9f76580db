#include <cmath>

#include "doctest.h"
#include "marc/oracle.hpp"
#include "marc/runner.hpp"

using namespace marc;

namespace {

const MmWaveGains kFig6a{1.0, 2.9, 1.3, 1.3, 3.0};

DualBandConfig joint_problem_config() {
  DualBandConfig cfg;
  cfg.alpha = 2.0;
  cfg.microwave = {2.0, Fading::Phase, 1.0, 1.0, 1.0};
  cfg.mmwave = {4.0, Fading::Phase, 1.0};
  cfg.microwave_gains = LinkGains{1.0, 1.0, 1.0, 1.0, 1.0};
  cfg.mmwave_gains = LinkGains{1.0, 1.0, 1.5, 1.5, 1.0};
  return cfg;
}

}  // namespace

TEST_CASE("numeric solver agrees with the closed form on a saturated channel") {
  const double P = 2.0;
  const P1Result r = solve_p1(kFig6a, P, 1e-9 * std::max(1.0, P));
  const Allocation closed = allocate(kFig6a, P).alloc;
  CHECK(r.converged);
  CHECK(r.alloc.p1 == doctest::Approx(closed.p1).epsilon(1e-3));
  CHECK(r.alloc.q1 == doctest::Approx(closed.q1).epsilon(1e-3));
  CHECK(r.alloc.p2 == doctest::Approx(closed.p2).epsilon(1e-3));
  CHECK(r.alloc.q2 == doctest::Approx(closed.q2).epsilon(1e-3));
}

TEST_CASE("numeric solver puts nothing on the relay links when gamma <= 1") {
  const MmWaveGains g{2.0, 2.0, 1.0, 1.0, 0.9};
  const P1Result r = solve_p1(g, 5.0, 1e-9);
  CHECK(r.alloc.q1 <= 1e-5);
  CHECK(r.alloc.q2 <= 1e-5);
}

TEST_CASE("numeric solver at zero budget") {
  const P1Result r = solve_p1(kFig6a, 0.0, 1e-9);
  CHECK(r.alloc.p1 == 0.0);
  CHECK(r.alloc.q2 == 0.0);
  CHECK(r.rate == doctest::Approx(0.0));  // min(sigma_r, sigma_d) normalized
}

TEST_CASE("kkt residuals vanish on closed-form allocations") {
  for (int trial = 0; trial < 500; ++trial) {
    auto u = [&](int d) { return verify_uniform(51, trial, d); };
    const double lo = std::log(0.05), hi = std::log(20.0);
    const MmWaveGains g{std::exp(lo + (hi - lo) * u(0)),
                        std::exp(lo + (hi - lo) * u(1)),
                        std::exp(lo + (hi - lo) * u(2)),
                        std::exp(lo + (hi - lo) * u(3)), 30.0 - 29.0 * u(4)};
    const double P = 100.0 * u(5);
    const Allocation a = allocate(g, P).alloc;
    const KktReport rep = kkt_residuals(g, P, a);
    CHECK(rep.stationarity_residual <= 1e-6);
    CHECK(rep.complementarity_residual <= 1e-6);
    CHECK(rep.feasibility_residual <= 1e-9);
    CHECK(rep.lambda1 == doctest::Approx(1.0 - rep.lambda2).epsilon(1e-12));
  }
}

TEST_CASE("kkt residuals expose a perturbed allocation") {
  const double P = 1.0;
  Allocation a = allocate(kFig6a, P).alloc;
  a.q1 += 0.1;
  a.p1 -= 0.1;
  const KktReport rep = kkt_residuals(kFig6a, P, a);
  CHECK(std::max(rep.stationarity_residual, rep.complementarity_residual) > 1e-3);
}

TEST_CASE("kkt handles the gamma <= 1 boundary case") {
  const MmWaveGains g{2.0, 3.0, 1.0, 1.0, 0.8};
  const KktReport rep = kkt_residuals(g, 4.0, {4.0, 0.0, 4.0, 0.0});
  CHECK(rep.lambda2 == 1.0);
  CHECK(rep.stationarity_residual <= 1e-6);
  CHECK(rep.complementarity_residual <= 1e-6);
}

TEST_CASE("joint-budget solver") {
  const DualBandConfig cfg = joint_problem_config();

  SUBCASE("zero budget") {
    const P2Result r = solve_p2(cfg, 0.0, 1e-6, 1000);
    CHECK(r.rate == 0.0);
    CHECK(r.alloc.p1 == 0.0);
  }
  SUBCASE("small budgets go entirely to the direct links") {
    const P2Result r = solve_p2(cfg, 1.0, 1e-6, 60000);
    CHECK(r.alloc.p1 + r.alloc.p2 >= 1.0 - 0.01);
    CHECK(r.rate == doctest::Approx(2.0 * 2.0 * std::log2(1.0 + 1.5 * 0.5)).epsilon(1e-2));
  }
  SUBCASE("objective is nondecreasing in the budget") {
    double prev = -1.0;
    for (double P : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const P2Result r = solve_p2(cfg, P, 1e-6, 40000);
      CHECK(r.rate >= prev - 1e-6);
      prev = r.rate;
    }
  }
  SUBCASE("rejects rayleigh configurations") {
    DualBandConfig bad = cfg;
    bad.microwave.fading = Fading::Rayleigh;
    CHECK_THROWS_AS(solve_p2(bad, 1.0, 1e-6, 10), std::domain_error);
  }
}

TEST_CASE("verify suite on a reduced trial count") {
  VerifyOptions opts;
  opts.trials = 500;
  opts.seed = 2024;
  const VerifyReport rep = run_verify(opts);
  CHECK(rep.unclassified == 0);
  CHECK(rep.max_rate_gap <= opts.rate_tol);
  CHECK(rep.max_component_gap <= opts.comp_tol);
  CHECK(rep.max_kkt_residual <= opts.kkt_tol);
  CHECK(rep.max_budget_violation <= 1e-12);
  CHECK(rep.pass);
}
