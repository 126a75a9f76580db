#include <cmath>

#include "doctest.h"
#include "marc/regions.hpp"
#include "marc/runner.hpp"

using namespace marc;

namespace {

constexpr double kPi = 3.14159265358979323846;

DualBandConfig all_unit(double alpha) {
  DualBandConfig cfg;
  cfg.alpha = alpha;
  cfg.microwave = {2.0, Fading::Phase, 10.0, 10.0, 10.0};
  cfg.mmwave = {4.0, Fading::Phase, 10.0};
  cfg.microwave_gains = LinkGains{1.0, 1.0, 1.0, 1.0, 1.0};
  cfg.mmwave_gains = LinkGains{1.0, 1.0, 1.0, 1.0, 1.0};
  return cfg;
}

DualBandConfig fig2_template() {
  DualBandConfig cfg;
  cfg.alpha = 2.0;
  cfg.microwave = {2.0, Fading::Phase, 10.0, 10.0, 10.0};
  cfg.mmwave = {4.0, Fading::Phase, 10.0};
  cfg.geometry = {1.0, 1.0, kPi / 4.0, std::nullopt};
  return cfg;
}

}  // namespace

TEST_CASE("achievable region bounds, unit gains and powers 10") {
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  const RateRegion r = rmarc_achievable_region(all_unit(2.0), mm);
  REQUIRE(r.constraints.size() == 6);
  // relay sum: log2(1+20) + 2*(log2(11) + log2(11))
  CHECK(r.constraints[2].bound ==
        doctest::Approx(std::log2(21.0) + 4.0 * std::log2(11.0)).epsilon(1e-13));
  CHECK(r.constraints[0].bound ==
        doctest::Approx(std::log2(11.0) + 2.0 * std::log2(11.0)).epsilon(1e-13));
  CHECK(r.constraints[5].bound ==
        doctest::Approx(std::log2(31.0) + 2.0 * std::log2(11.0)).epsilon(1e-13));
}

TEST_CASE("alpha = 0 removes every mm-wave term") {
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  const RateRegion with = rmarc_achievable_region(all_unit(0.0), mm);
  const MmWaveLinkPowers none{0.0, 0.0, 0.0, 0.0};
  const RateRegion without = rmarc_achievable_region(all_unit(0.0), none);
  for (size_t i = 0; i < 6; ++i)
    CHECK(with.constraints[i].bound == without.constraints[i].bound);
}

TEST_CASE("zero mm-wave power leaves the pure microwave bounds") {
  DualBandConfig cfg = all_unit(2.0);
  cfg.mmwave.pr_bar = 0.0;
  const MmWaveLinkPowers none{};
  const RateRegion r = rmarc_achievable_region(cfg, none);
  CHECK(r.constraints[0].bound == doctest::Approx(std::log2(11.0)).epsilon(1e-13));
  CHECK(r.constraints[2].bound == doctest::Approx(std::log2(21.0)).epsilon(1e-13));
}

TEST_CASE("direct links increment the region bounds") {
  const MmWaveLinkPowers relay_only{5.0, 5.0, 0.0, 0.0};
  const RateRegion base = rmarc_achievable_region(all_unit(2.0), relay_only);

  SUBCASE("zero direct powers change nothing") {
    const RateRegion same = drmarc_region(base, all_unit(2.0), relay_only);
    for (size_t i = 0; i < 6; ++i)
      CHECK(same.constraints[i].bound == base.constraints[i].bound);
  }
  SUBCASE("one direct link at unit gain and power, alpha 2: +2 bits on R1") {
    MmWaveLinkPowers mm = relay_only;
    mm.p1_bar = 1.0;
    const RateRegion r = drmarc_region(base, all_unit(2.0), mm);
    CHECK(r.constraints[0].bound - base.constraints[0].bound ==
          doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.constraints[1].bound == base.constraints[1].bound);
    CHECK(r.constraints[2].bound - base.constraints[2].bound ==
          doctest::Approx(2.0).epsilon(1e-13));
  }
  SUBCASE("both direct links, gain 1, power 3, alpha 1: +4 bits on the sum") {
    MmWaveLinkPowers mm = relay_only;
    mm.p1_bar = mm.p2_bar = 3.0;
    const RateRegion r = drmarc_region(base, all_unit(1.0), mm);
    CHECK(r.constraints[2].bound - base.constraints[2].bound ==
          doctest::Approx(4.0).epsilon(1e-13));
  }
}

TEST_CASE("jointly-near check on the reference geometry") {
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  DualBandConfig cfg = fig2_template();

  // sources close to the relay: every condition holds
  cfg.geometry.d_sr = 0.8;
  NearnessReport rep = jointly_near_check(cfg, mm);
  CHECK(rep.cond_r1.holds);
  CHECK(rep.cond_r2.holds);
  CHECK(rep.cond_sum.holds);
  CHECK(rep.capacity_achieving);

  // the sum condition reaches farther than the per-user ones and holds up
  // to the threshold distance 1.40
  cfg.geometry.d_sr = 1.0;
  rep = jointly_near_check(cfg, mm);
  CHECK(rep.cond_sum.holds);
  CHECK(rep.cond_sum.margin == doctest::Approx(7.2358).epsilon(1e-3));

  cfg.geometry.d_sr = 2.0;
  rep = jointly_near_check(cfg, mm);
  CHECK_FALSE(rep.cond_sum.holds);
  CHECK_FALSE(rep.capacity_achieving);
  // symmetric sources: the two per-user margins coincide
  CHECK(rep.cond_r1.margin == rep.cond_r2.margin);
}

TEST_CASE("destination bounds stay below relay bounds when all margins hold") {
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  for (int trial = 0; trial < 60; ++trial) {
    auto u = [&](int d) { return verify_uniform(5, trial, d); };
    DualBandConfig cfg = fig2_template();
    cfg.geometry.d_sr = 0.2 + 2.0 * u(0);
    cfg.geometry.phi = kPi * u(1);
    cfg.geometry.d_rd = 0.4 + u(2);
    const NearnessReport rep = jointly_near_check(cfg, mm);
    if (!rep.capacity_achieving) continue;
    const RateRegion r = rmarc_achievable_region(cfg, mm);
    CHECK(r.constraints[3].bound <= r.constraints[0].bound);
    CHECK(r.constraints[4].bound <= r.constraints[1].bound);
    CHECK(r.constraints[5].bound <= r.constraints[2].bound);
  }
}

TEST_CASE("threshold source-relay distances of the reference setup") {
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  const DualBandConfig cfg = fig2_template();

  ThresholdDistance t = threshold_distance(cfg, mm, 1.0, kPi / 4.0, 2.0, 1e-9);
  REQUIRE(t.status == ThresholdDistance::Status::Found);
  CHECK(t.d_sr == doctest::Approx(1.41).epsilon(0.015));
  CHECK(t.d_sr == doctest::Approx(1.4039).epsilon(1e-3));

  t = threshold_distance(cfg, mm, 0.5, kPi / 4.0, 2.0, 1e-9);
  REQUIRE(t.status == ThresholdDistance::Status::Found);
  CHECK(t.d_sr == doctest::Approx(0.91).epsilon(0.02));

  // no mm-wave band, sources on the destination side
  t = threshold_distance(cfg, mm, 1.0, kPi, 0.0, 1e-9);
  REQUIRE(t.status == ThresholdDistance::Status::Found);
  CHECK(t.d_sr == doctest::Approx(0.4844).epsilon(0.01));
  CHECK(std::abs(t.d_sr - 0.47) < 0.03);
}

TEST_CASE("sum rates") {
  const MmWaveGains g{1.0, 1.0, 1.0, 1.0, 2.0};

  SUBCASE("zero allocation returns the microwave summary") {
    const MicrowaveSummary s{1.5, 2.5, 2.0};
    const SumRates r = sum_rates(s, g, {0, 0, 0, 0}, 2.0);
    CHECK(r.sigma_big_r == 1.5);
    CHECK(r.sigma_big_d == 2.5);
    CHECK(r.rate == 1.5);
  }
  SUBCASE("unit logs") {
    const MicrowaveSummary s{0.0, 0.0, 1.0};
    const SumRates r = sum_rates(s, g, {1, 1, 1, 1}, 1.0);
    CHECK(r.sigma_big_r == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.sigma_big_d == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.rate == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("saturation identity makes the two sum rates equal") {
    // (1+q1)(1+q2) = gamma with q1 = 0.5, q2 = gamma/1.5 - 1
    const double gamma = 2.4;
    const double q1 = 0.5, q2 = gamma / 1.5 - 1.0;
    const MmWaveGains gg{1.0, 1.0, 1.0, 1.0, gamma};
    const double alpha = 2.0;
    const MicrowaveSummary s{0.0, alpha * std::log2(gamma), gamma};
    const SumRates r = sum_rates(s, gg, {3.0 - q1, q1, 3.0 - q2, q2}, alpha);
    CHECK(r.sigma_big_r == doctest::Approx(r.sigma_big_d).epsilon(1e-12));
  }
}

TEST_CASE("sum rates are concave in the allocation (random midpoints)") {
  for (int trial = 0; trial < 200; ++trial) {
    auto u = [&](int d) { return verify_uniform(17, trial, d); };
    const MmWaveGains g{0.2 + 4 * u(0), 0.2 + 4 * u(1), 0.2 + 4 * u(2),
                        0.2 + 4 * u(3), 1.5 + 3 * u(4)};
    const MicrowaveSummary s{0.0, std::log2(g.gamma), g.gamma};
    const Allocation a{5 * u(5), 5 * u(6), 5 * u(7), 5 * u(8)};
    const Allocation b{5 * u(9), 5 * u(10), 5 * u(11), 5 * u(12)};
    const Allocation mid{0.5 * (a.p1 + b.p1), 0.5 * (a.q1 + b.q1),
                         0.5 * (a.p2 + b.p2), 0.5 * (a.q2 + b.q2)};
    const double fa = sum_rates(s, g, a, 1.0).rate;
    const double fb = sum_rates(s, g, b, 1.0).rate;
    const double fm = sum_rates(s, g, mid, 1.0).rate;
    CHECK(fm >= 0.5 * (fa + fb) - 1e-10);
  }
}

TEST_CASE("region vertices form the expected pentagon") {
  RateRegion r;
  r.constraints = {{1, 0, 3.0}, {0, 1, 2.0}, {1, 1, 4.0}};
  const auto v = region_vertices(r);
  REQUIRE(v.size() == 5);
  CHECK(v[0] == std::pair(0.0, 0.0));
  CHECK(v[1] == std::pair(3.0, 0.0));
  CHECK(v[2] == std::pair(3.0, 1.0));
  CHECK(v[3] == std::pair(2.0, 2.0));
  CHECK(v[4] == std::pair(0.0, 2.0));
}
