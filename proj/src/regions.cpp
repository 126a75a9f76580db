#include "marc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace marc {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

struct SixBounds {
  double relay_r1, relay_r2, relay_sum;
  double dest_r1, dest_r2, dest_sum;
};

// The six decodability bounds: per-user and sum at the relay, then at the
// destination, each with its alpha-weighted mm-wave term.
SixBounds six_bounds(const DualBandConfig& cfg, const MmWaveLinkPowers& mm,
                     const EvalOptions& opts) {
  cfg.validate();
  if (mm.p1_hat < 0 || mm.p2_hat < 0 || mm.p1_bar < 0 || mm.p2_bar < 0)
    throw std::domain_error("mm-wave link powers must be >= 0");
  const LinkGains gw = cfg.resolved_microwave_gains();
  const LinkGains gm = cfg.resolved_mmwave_gains();
  const Fading fw = cfg.microwave.fading;
  const Fading fm = cfg.mmwave.fading;
  const double p1 = cfg.microwave.p1, p2 = cfg.microwave.p2, pr = cfg.microwave.pr;
  const double a = cfg.alpha;

  auto er = [&](Fading f, std::initializer_list<double> gains,
                std::initializer_list<double> powers) {
    return ergodic_rate(f, std::span<const double>(gains.begin(), gains.size()),
                        std::span<const double>(powers.begin(), powers.size()),
                        opts);
  };

  SixBounds b{};
  const double hat1 = a * er(fm, {gm.s1r}, {mm.p1_hat});
  const double hat2 = a * er(fm, {gm.s2r}, {mm.p2_hat});
  const double bar_rd = a * er(fm, {gm.rd}, {cfg.mmwave.pr_bar});
  b.relay_r1 = er(fw, {gw.s1r}, {p1}) + hat1;
  b.relay_r2 = er(fw, {gw.s2r}, {p2}) + hat2;
  b.relay_sum = er(fw, {gw.s1r, gw.s2r}, {p1, p2}) + hat1 + hat2;
  b.dest_r1 = er(fw, {gw.s1d, gw.rd}, {p1, pr}) + bar_rd;
  b.dest_r2 = er(fw, {gw.s2d, gw.rd}, {p2, pr}) + bar_rd;
  b.dest_sum = er(fw, {gw.s1d, gw.s2d, gw.rd}, {p1, p2, pr}) + bar_rd;
  return b;
}

}  // namespace

RateRegion rmarc_achievable_region(const DualBandConfig& cfg,
                                   const MmWaveLinkPowers& mm,
                                   const EvalOptions& opts) {
  const SixBounds b = six_bounds(cfg, mm, opts);
  RateRegion region;
  region.constraints = {{1, 0, b.relay_r1}, {0, 1, b.relay_r2},
                        {1, 1, b.relay_sum}, {1, 0, b.dest_r1},
                        {0, 1, b.dest_r2},  {1, 1, b.dest_sum}};
  return region;
}

RateRegion drmarc_region(const RateRegion& rmarc, const DualBandConfig& cfg,
                         const MmWaveLinkPowers& mm, const EvalOptions& opts) {
  cfg.validate();
  const LinkGains gm = cfg.resolved_mmwave_gains();
  const double g1[] = {gm.s1d};
  const double g2[] = {gm.s2d};
  const double pw1[] = {mm.p1_bar};
  const double pw2[] = {mm.p2_bar};
  const double inc1 = cfg.alpha * ergodic_rate(cfg.mmwave.fading, g1, pw1, opts);
  const double inc2 = cfg.alpha * ergodic_rate(cfg.mmwave.fading, g2, pw2, opts);
  RateRegion out = rmarc;
  for (RateConstraint& c : out.constraints)
    c.bound += c.coeff_r1 * inc1 + c.coeff_r2 * inc2;
  return out;
}

NearnessReport jointly_near_check(const DualBandConfig& cfg,
                                  const MmWaveLinkPowers& mm,
                                  const EvalOptions& opts) {
  const SixBounds b = six_bounds(cfg, mm, opts);
  auto cm = [](double rhs, double lhs) {
    return ConditionMargin{rhs - lhs >= 0.0, rhs - lhs};
  };
  NearnessReport rep{cm(b.relay_r1, b.dest_r1), cm(b.relay_r2, b.dest_r2),
                     cm(b.relay_sum, b.dest_sum), false};
  rep.capacity_achieving =
      rep.cond_r1.holds && rep.cond_r2.holds && rep.cond_sum.holds;
  return rep;
}

ThresholdDistance threshold_distance(const DualBandConfig& tmpl,
                                     const MmWaveLinkPowers& mm, double d_rd,
                                     double phi, double alpha, double tol,
                                     const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::domain_error("threshold_distance: tol must be > 0");
  DualBandConfig cfg = tmpl;
  cfg.alpha = alpha;
  cfg.geometry.d_rd = d_rd;
  cfg.geometry.phi = phi;
  cfg.geometry.explicit_dists.reset();
  cfg.microwave_gains.reset();
  cfg.mmwave_gains.reset();
  auto margin = [&](double d_sr) {
    cfg.geometry.d_sr = d_sr;
    const SixBounds b = six_bounds(cfg, mm, opts);
    return b.relay_sum - b.dest_sum;
  };
  double lo = 1e-3, hi = 10.0;
  double mlo = margin(lo), mhi = margin(hi);
  if ((mlo >= 0.0) == (mhi >= 0.0)) {
    return {mlo >= 0.0 ? ThresholdDistance::Status::AlwaysHolds
                       : ThresholdDistance::Status::NeverHolds,
            0.0};
  }
  // 60 bisection steps; keep halving past that if the margin tolerance is
  // not yet met (tol bounds |margin|, not the bracket width)
  double m_mid = mlo;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    m_mid = margin(mid);
    if ((m_mid >= 0.0) == (mlo >= 0.0)) {
      lo = mid;
      mlo = m_mid;
    } else {
      hi = mid;
      mhi = m_mid;
    }
    if (i >= 59 && std::abs(m_mid) <= tol) break;
  }
  return {ThresholdDistance::Status::Found, 0.5 * (lo + hi)};
}

SumRates sum_rates(const MicrowaveSummary& summary, const MmWaveGains& gains,
                   const Allocation& alloc, double alpha) {
  if (alloc.p1 < 0 || alloc.q1 < 0 || alloc.p2 < 0 || alloc.q2 < 0)
    throw std::domain_error("sum_rates: allocation must be >= 0");
  const double direct = std::log1p(gains.d1 * alloc.p1) / kLn2 +
                        std::log1p(gains.d2 * alloc.p2) / kLn2;
  const double relay = std::log1p(gains.r1 * alloc.q1) / kLn2 +
                       std::log1p(gains.r2 * alloc.q2) / kLn2;
  SumRates s{};
  s.sigma_big_r = summary.sigma_r + alpha * (relay + direct);
  s.sigma_big_d = summary.sigma_d + alpha * direct;
  s.rate = std::min(s.sigma_big_r, s.sigma_big_d);
  return s;
}

std::vector<std::pair<double, double>> region_vertices(const RateRegion& region) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double A = kInf, B = kInf, C = kInf;
  for (const RateConstraint& c : region.constraints) {
    if (c.coeff_r1 == 1 && c.coeff_r2 == 0) A = std::min(A, c.bound);
    else if (c.coeff_r1 == 0 && c.coeff_r2 == 1) B = std::min(B, c.bound);
    else if (c.coeff_r1 == 1 && c.coeff_r2 == 1) C = std::min(C, c.bound);
  }
  if (!std::isfinite(A) || !std::isfinite(B))
    throw std::domain_error("region_vertices: region must bound both rates");
  C = std::min(C, A + B);
  std::vector<std::pair<double, double>> v;
  v.emplace_back(0.0, 0.0);
  v.emplace_back(std::min(A, C), 0.0);
  if (C < A + B) {
    if (C - A > 0.0 && C - A < B) v.emplace_back(A, C - A);
    if (C - B > 0.0 && C - B < A) v.emplace_back(C - B, B);
  } else {
    v.emplace_back(A, B);
  }
  v.emplace_back(0.0, std::min(B, C));
  v.erase(std::unique(v.begin(), v.end(),
                      [](const auto& a, const auto& b) {
                        return std::abs(a.first - b.first) < 1e-15 &&
                               std::abs(a.second - b.second) < 1e-15;
                      }),
          v.end());
  return v;
}

}  // namespace marc
