#pragma once

#include <utility>
#include <vector>

#include "marc/allocator.hpp"
#include "marc/channel.hpp"

namespace marc {

// One half-plane constraint coeff_r1*R1 + coeff_r2*R2 <= bound, coeffs in {0,1}.
struct RateConstraint {
  int coeff_r1, coeff_r2;
  double bound;
};

struct RateRegion {
  std::vector<RateConstraint> constraints;
};

// mm-wave source link powers: hats feed the relay links, bars the direct links.
struct MmWaveLinkPowers {
  double p1_hat = 0.0, p2_hat = 0.0;
  double p1_bar = 0.0, p2_bar = 0.0;
};

// Achievable region of the relay-linked channel: six constraints, three
// decodability bounds at the relay followed by three at the destination.
RateRegion rmarc_achievable_region(const DualBandConfig& cfg,
                                   const MmWaveLinkPowers& mm,
                                   const EvalOptions& opts = {});

// Region of the full dual-band channel: each per-user bound of the underlying
// region grows by alpha*E[C(G_kD_bar * P_k_bar)], sum bounds by both increments.
RateRegion drmarc_region(const RateRegion& rmarc, const DualBandConfig& cfg,
                         const MmWaveLinkPowers& mm, const EvalOptions& opts = {});

struct ConditionMargin {
  bool holds;
  double margin;  // RHS - LHS, bits/use
};

// The three capacity conditions: each destination-side bound must not exceed
// the matching relay-side bound.
struct NearnessReport {
  ConditionMargin cond_r1, cond_r2, cond_sum;
  bool capacity_achieving;
};

NearnessReport jointly_near_check(const DualBandConfig& cfg,
                                  const MmWaveLinkPowers& mm,
                                  const EvalOptions& opts = {});

struct ThresholdDistance {
  enum class Status { Found, AlwaysHolds, NeverHolds };
  Status status;
  double d_sr;  // meaningful only when status == Found
};

// Largest source-relay distance at which the sum capacity condition still
// holds, for the symmetric 2-D placement. Bisection on [1e-3, 10].
ThresholdDistance threshold_distance(const DualBandConfig& tmpl,
                                     const MmWaveLinkPowers& mm, double d_rd,
                                     double phi, double alpha, double tol,
                                     const EvalOptions& opts = {});

struct SumRates {
  double sigma_big_r;  // achievable sum-rate at the relay
  double sigma_big_d;  // achievable sum-rate at the destination
  double rate;         // min of the two
};

SumRates sum_rates(const MicrowaveSummary& summary, const MmWaveGains& gains,
                   const Allocation& alloc, double alpha);

// Corner points of the two-user region polytope, counter-clockwise from the
// origin. Presentation utility; the constraint list is the representation.
std::vector<std::pair<double, double>> region_vertices(const RateRegion& region);

}  // namespace marc
