#pragma once

#include <cstdint>
#include <string>

#include "marc/config.hpp"
#include "marc/oracle.hpp"
#include "marc/table.hpp"

namespace marc {

ResultTable cmd_allocate(const MmWaveGains& g, double budget,
                         const RateContext& ctx);
ResultTable cmd_thresholds(const MmWaveGains& g);
ResultTable cmd_path(const MmWaveGains& g, double p_max);
ResultTable cmd_path_samples(const MmWaveGains& g, double p_max, int n);
ResultTable cmd_summary(const RunConfig& cfg);
ResultTable cmd_region(const RunConfig& cfg, bool vertices);
ResultTable cmd_check_near(const RunConfig& cfg);
ResultTable cmd_sweep2d(const RunConfig& cfg, int phi_steps, int dsr_steps,
                        double dsr_max, double budget);
ResultTable cmd_p2(const RunConfig& cfg, double p_min, double p_max, int steps,
                   double tol, int iters);
ResultTable cmd_fig(const std::string& id, const RunOptions& run);

struct VerifyOptions {
  int trials = 10000;
  std::uint64_t seed = 0;
  double rate_tol = 1e-5;
  double comp_tol = 1e-3;
  double kkt_tol = 1e-6;
  int threads = 0;  // 0 = hardware concurrency
};

struct VerifyReport {
  int trials = 0;
  int unclassified = 0;
  int ties = 0;  // tuples without strict complementarity, excluded from
                 // the per-component comparison
  double max_rate_gap = 0.0;
  double max_component_gap = 0.0;
  double max_kkt_residual = 0.0;
  double max_budget_violation = 0.0;
  bool pass = false;
};

// Randomized closed-form vs numeric-oracle agreement suite: log-uniform gains
// in [0.05, 20], gamma in (1, 30], P in [0, 100].
VerifyReport run_verify(const VerifyOptions& opts);
ResultTable verify_table(const VerifyReport& report);

// Deterministic per-trial uniform draw in [0,1): depends only on
// (seed, trial, draw), independent of threading.
double verify_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw);

}  // namespace marc
