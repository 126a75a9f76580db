#pragma once

#include "marc/allocator.hpp"
#include "marc/channel.hpp"
#include "marc/regions.hpp"

namespace marc {

// Microwave-side constants entering the sum rates. The allocation itself only
// depends on gamma; sigma_r/sigma_d/alpha fix the reported rate values.
struct RateContext {
  double sigma_r;
  double sigma_d;
  double alpha;
};

// Normalized context consistent with a given gamma: sigma_r = 0, alpha = 1.
RateContext normalized_context(double gamma);

struct P1Result {
  Allocation alloc;
  double rate;
  int iterations;  // objective evaluations
  bool converged;
};

// Numeric solver for the mm-wave sum-rate problem: since both sum rates are
// increasing in the direct powers, the budget binds and the problem reduces
// to a concave maximization over (q1, q2) in [0,P]^2, solved by nested
// golden-section search refined to |dq| <= tol.
P1Result solve_p1(const MmWaveGains& g, double P, double tol,
                  const RateContext* ctx = nullptr);

struct P2Result {
  Allocation alloc;                          // mm-wave source link powers
  double micro_p1, micro_p2, micro_pr;       // microwave link powers
  double mm_pr_bar;                          // mm-wave relay->destination power
  double rate;
  int iterations;
  bool converged;
};

// Joint problem: one budget shared by all eight link powers. Projected
// supergradient ascent on min(Sigma_R, Sigma_D) over the simplex slice,
// diminishing steps c/sqrt(t), deterministic for a fixed iteration budget.
P2Result solve_p2(const DualBandConfig& cfg, double P, double tol,
                  int max_iters = 200000, const EvalOptions& opts = {});

struct KktReport {
  double lambda1, lambda2;  // multipliers of R <= Sigma_R / R <= Sigma_D
  double mu1, mu2;          // multipliers of the two budget equalities
  double rho1, rho2, rho3, rho4;  // multipliers of p1,q1,p2,q2 >= 0
  double stationarity_residual;
  double complementarity_residual;
  double feasibility_residual;
  bool strict_complementarity;  // no primal/dual pair is simultaneously ~0
};

// Recovers multipliers for a candidate allocation and reports how far the
// point is from satisfying the first-order optimality system.
KktReport kkt_residuals(const MmWaveGains& g, double P, const Allocation& alloc,
                        const RateContext* ctx = nullptr);

}  // namespace marc
