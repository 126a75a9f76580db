#include "marc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "marc/quadrature.hpp"

namespace marc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Cell inf_cell(double v) {
  if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
  return v;
}

// Static-chunked parallel loop; results must be written by index.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([=, &body] {
      for (int i = w; i < n; i += threads) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

ResultTable cmd_allocate(const MmWaveGains& g, double budget,
                         const RateContext& ctx) {
  const AllocationResult res = allocate(g, budget);
  const MicrowaveSummary sum{ctx.sigma_r, ctx.sigma_d,
                             g.gamma};
  const SumRates rates = sum_rates(sum, g, res.alloc, ctx.alpha);
  ResultTable t;
  t.columns = {"p1", "q1", "p2", "q2", "lgr", "sum_rate_relay",
               "sum_rate_dest", "rate"};
  t.add_row({res.alloc.p1, res.alloc.q1, res.alloc.p2, res.alloc.q2,
             std::string(to_string(res.lgr)), rates.sigma_big_r,
             rates.sigma_big_d, rates.rate});
  return t;
}

ResultTable cmd_thresholds(const MmWaveGains& g) {
  const ThresholdPowers t = threshold_powers(g);
  ResultTable out;
  out.columns = {"p_d_d",     "p_d_d_prime", "p_hat_d_d", "p_hat_d_d_prime",
                 "p_r_d",     "p_d_r",       "p_r_r",     "p_rd_d",
                 "p_d_rd",    "p_r_rd",      "p_rd_r",    "p_rd_rd",
                 "pbar_r_rd", "pbar_rd_r",   "pbar_rd_d", "pbar_d_rd",
                 "regime"};
  out.add_row({inf_cell(t.p_d_d), inf_cell(t.p_d_d_prime), inf_cell(t.p_hat_d_d),
               inf_cell(t.p_hat_d_d_prime), inf_cell(t.p_r_d), inf_cell(t.p_d_r),
               inf_cell(t.p_r_r), inf_cell(t.p_rd_d), inf_cell(t.p_d_rd),
               inf_cell(t.p_r_rd), inf_cell(t.p_rd_r), inf_cell(t.p_rd_rd),
               inf_cell(t.pbar_r_rd), inf_cell(t.pbar_rd_r), inf_cell(t.pbar_rd_d),
               inf_cell(t.pbar_d_rd),
               std::string(to_string(relay_regime(g.r1, g.r2, g.gamma)))});
  return out;
}

ResultTable cmd_path(const MmWaveGains& g, double p_max) {
  const LgrPath path = lgr_path(g, p_max);
  ResultTable t;
  t.columns = {"label", "lgr", "p_lo", "p_hi"};
  for (const LgrSegment& s : path.segments) {
    t.add_row({path.label, std::string(to_string(s.lgr)), s.p_lo,
               inf_cell(s.p_hi)});
  }
  return t;
}

ResultTable cmd_path_samples(const MmWaveGains& g, double p_max, int n) {
  if (n < 2) throw std::invalid_argument("path samples: need at least 2 points");
  ResultTable t;
  t.columns = {"P", "p1", "q1", "p2", "q2", "lgr"};
  for (int i = 0; i < n; ++i) {
    const double P = p_max * i / (n - 1);
    const AllocationResult res = allocate(g, P);
    t.add_row({P, res.alloc.p1, res.alloc.q1, res.alloc.p2, res.alloc.q2,
               std::string(to_string(res.lgr))});
  }
  return t;
}

ResultTable cmd_summary(const RunConfig& cfg) {
  const MicrowaveSummary sum = microwave_summary(cfg.channel, cfg.eval());
  ResultTable t;
  t.columns = {"sigma_r", "sigma_d", "gamma"};
  t.add_row({sum.sigma_r, sum.sigma_d, sum.gamma});
  return t;
}

ResultTable cmd_region(const RunConfig& cfg, bool vertices) {
  const RateRegion rmarc =
      rmarc_achievable_region(cfg.channel, cfg.mm_powers, cfg.eval());
  const RateRegion drmarc =
      drmarc_region(rmarc, cfg.channel, cfg.mm_powers, cfg.eval());
  ResultTable t;
  if (vertices) {
    t.columns = {"region", "r1", "r2"};
    for (const auto& [x, y] : region_vertices(rmarc))
      t.add_row({std::string("rmarc"), x, y});
    for (const auto& [x, y] : region_vertices(drmarc))
      t.add_row({std::string("drmarc"), x, y});
    return t;
  }
  t.columns = {"region", "side", "coeff_r1", "coeff_r2", "bound"};
  const char* sides[6] = {"relay", "relay", "relay", "dest", "dest", "dest"};
  for (size_t i = 0; i < rmarc.constraints.size(); ++i) {
    const RateConstraint& c = rmarc.constraints[i];
    t.add_row({std::string("rmarc"), std::string(sides[i]),
               static_cast<double>(c.coeff_r1), static_cast<double>(c.coeff_r2),
               c.bound});
  }
  for (size_t i = 0; i < drmarc.constraints.size(); ++i) {
    const RateConstraint& c = drmarc.constraints[i];
    t.add_row({std::string("drmarc"), std::string(sides[i]),
               static_cast<double>(c.coeff_r1), static_cast<double>(c.coeff_r2),
               c.bound});
  }
  return t;
}

ResultTable cmd_check_near(const RunConfig& cfg) {
  const NearnessReport rep =
      jointly_near_check(cfg.channel, cfg.mm_powers, cfg.eval());
  ResultTable t;
  t.columns = {"condition", "holds", "margin"};
  auto row = [&](const char* name, const ConditionMargin& c) {
    t.add_row({std::string(name), std::string(c.holds ? "true" : "false"),
               c.margin});
  };
  row("r1", rep.cond_r1);
  row("r2", rep.cond_r2);
  row("sum", rep.cond_sum);
  t.add_row({std::string("capacity_achieving"),
             std::string(rep.capacity_achieving ? "true" : "false"),
             rep.capacity_achieving ? 1.0 : 0.0});
  return t;
}

ResultTable cmd_sweep2d(const RunConfig& cfg, int phi_steps, int dsr_steps,
                        double dsr_max, double budget) {
  if (phi_steps < 1 || dsr_steps < 1)
    throw std::invalid_argument("sweep2d: step counts must be >= 1");
  std::vector<double> phis(phi_steps), dsrs(dsr_steps);
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < phi_steps; ++i) phis[i] = kPi * (i + 0.5) / phi_steps;
  for (int i = 0; i < dsr_steps; ++i) dsrs[i] = dsr_max * (i + 0.5) / dsr_steps;
  const auto cells =
      sweep_2d_topology(cfg.channel, phis, dsrs, budget, cfg.eval());
  ResultTable t;
  t.columns = {"phi", "d_sr", "x", "y", "gamma", "mode"};
  for (const TopologyCell& c : cells)
    t.add_row({c.phi, c.d_sr, c.x, c.y, c.gamma, std::string(to_string(c.mode))});
  return t;
}

ResultTable cmd_p2(const RunConfig& cfg, double p_min, double p_max, int steps,
                   double tol, int iters) {
  if (steps < 1) throw std::invalid_argument("p2: steps must be >= 1");
  ResultTable t;
  t.columns = {"P",  "p1", "q1", "p2",     "q2",  "micro_p1", "micro_p2",
               "micro_pr", "mm_pr_bar", "rate", "converged"};
  std::vector<std::vector<Cell>> rows(steps);
  parallel_for(steps, 0, [&](int i) {
    const double P =
        steps == 1 ? p_min : p_min + (p_max - p_min) * i / (steps - 1);
    const P2Result r = solve_p2(cfg.channel, P, tol, iters, cfg.eval());
    rows[i] = {P,
               r.alloc.p1,
               r.alloc.q1,
               r.alloc.p2,
               r.alloc.q2,
               r.micro_p1,
               r.micro_p2,
               r.micro_pr,
               r.mm_pr_bar,
               r.rate,
               std::string(r.converged ? "true" : "false")};
  });
  for (auto& row : rows) t.add_row(std::move(row));
  return t;
}

namespace {

DualBandConfig fig2_config() {
  DualBandConfig cfg;
  cfg.alpha = 2.0;
  cfg.microwave = {2.0, Fading::Phase, 10.0, 10.0, 10.0};
  cfg.mmwave = {4.0, Fading::Phase, 10.0};
  cfg.geometry = {1.0, 1.0, 3.14159265358979323846 / 4.0, std::nullopt};
  return cfg;
}

DualBandConfig fig5_config() {
  DualBandConfig cfg;
  cfg.alpha = 2.0;
  cfg.microwave = {2.0, Fading::Phase, 10.0, 10.0, 10.0};
  cfg.mmwave = {4.0, Fading::Phase, 1.0};
  cfg.geometry = {1.0, 1.0, 0.0, std::nullopt};
  return cfg;
}

// All microwave gains 1, mm-wave d = 1.5, r = 1, unit fixed powers; the
// joint-budget study of problem [P2] uses the same channel.
DualBandConfig fig7_config() {
  DualBandConfig cfg;
  cfg.alpha = 2.0;
  cfg.microwave = {2.0, Fading::Phase, 1.0, 1.0, 1.0};
  cfg.mmwave = {4.0, Fading::Phase, 1.0};
  cfg.microwave_gains = LinkGains{1.0, 1.0, 1.0, 1.0, 1.0};
  cfg.mmwave_gains = LinkGains{1.0, 1.0, 1.5, 1.5, 1.0};
  return cfg;
}

ResultTable fig_2a(const RunOptions& run) {
  const DualBandConfig cfg = fig2_config();
  const MmWaveLinkPowers mm{10.0, 10.0, 0.0, 0.0};
  const EvalOptions opts{run.seed, run.qmc_samples};
  ResultTable t;
  t.columns = {"d_rd", "d_sr", "asr", "ob"};
  for (double d_rd : {1.0, 0.5}) {
    for (int i = 1; i <= 100; ++i) {
      const double d_sr = 2.5 * i / 100.0;
      DualBandConfig c = cfg;
      c.geometry.d_rd = d_rd;
      c.geometry.d_sr = d_sr;
      const RateRegion region = rmarc_achievable_region(c, mm, opts);
      const double relay_sum = region.constraints[2].bound;
      const double dest_sum = region.constraints[5].bound;
      t.add_row({d_rd, d_sr, std::min(relay_sum, dest_sum), dest_sum});
    }
  }
  return t;
}

ResultTable fig_6(const char* which, const RunOptions&) {
  const bool a = std::string(which) == "6a";
  const MmWaveGains g = a ? MmWaveGains{1.0, 2.9, 1.3, 1.3, 3.0}
                          : MmWaveGains{1.0, 4.0, 1.52, 1.52, 3.0};
  ResultTable t;
  t.columns = {"P", "p1", "q1", "p2", "q2", "lgr", "label"};
  const LgrPath path = lgr_path(g, 2.0);
  for (int i = 0; i <= 200; ++i) {
    const double P = 2.0 * i / 200.0;
    const AllocationResult res = allocate(g, P);
    t.add_row({P, res.alloc.p1, res.alloc.q1, res.alloc.p2, res.alloc.q2,
               std::string(to_string(res.lgr)), path.label});
  }
  return t;
}

ResultTable fig_7a(const RunOptions& run) {
  const DualBandConfig cfg = fig7_config();
  const MicrowaveSummary sum =
      microwave_summary(cfg, {run.seed, run.qmc_samples});
  ResultTable t;
  t.columns = {"P", "p", "q", "mode", "gamma"};
  for (int i = 0; i <= 250; ++i) {
    const double P = 5.0 * i / 250.0;
    const Allocation al = symmetric_allocate(1.0, 1.5, sum.gamma, P);
    t.add_row({P, al.p1, al.q1,
               std::string(to_string(symmetric_mode(1.0, 1.5, sum.gamma, P))),
               sum.gamma});
  }
  return t;
}

ResultTable fig_7b(const RunOptions& run) {
  RunConfig rc;
  rc.channel = fig7_config();
  rc.run = run;
  return cmd_p2(rc, 0.0, 5.0, 51, 1e-6, 200000);
}

ResultTable fig_5(const RunOptions& run) {
  RunConfig rc;
  rc.channel = fig5_config();
  rc.run = run;
  return cmd_sweep2d(rc, 48, 64, 4.0, 10.0);
}

}  // namespace

ResultTable cmd_fig(const std::string& id, const RunOptions& run) {
  if (id == "2a") return fig_2a(run);
  if (id == "5") return fig_5(run);
  if (id == "6a" || id == "6b") return fig_6(id.c_str(), run);
  if (id == "7a") return fig_7a(run);
  if (id == "7b") return fig_7b(run);
  throw std::invalid_argument("fig: unknown id '" + id +
                              "' (expected 2a, 5, 6a, 6b, 7a or 7b)");
}

double verify_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t draw) {
  const std::uint64_t h =
      detail::mix64(seed ^ detail::mix64(trial * 0x9E3779B97F4A7C15ull + draw));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  VerifyReport rep{};
  rep.trials = opts.trials;

  struct TrialOut {
    bool unclassified = false;
    bool tie = false;
    double rate_gap = 0.0;
    double comp_gap = 0.0;
    double kkt = 0.0;
    double budget = 0.0;
  };
  std::vector<TrialOut> results(opts.trials);

  const double lo = std::log(0.05), hi = std::log(20.0);
  parallel_for(opts.trials, opts.threads, [&](int i) {
    TrialOut& out = results[i];
    const auto u = [&](int d) { return verify_uniform(opts.seed, i, d); };
    const MmWaveGains g{std::exp(lo + (hi - lo) * u(0)),
                        std::exp(lo + (hi - lo) * u(1)),
                        std::exp(lo + (hi - lo) * u(2)),
                        std::exp(lo + (hi - lo) * u(3)),
                        30.0 - 29.0 * u(4)};
    const double P = 100.0 * u(5);
    AllocationResult res;
    try {
      res = allocate(g, P);
    } catch (const std::exception&) {
      out.unclassified = true;
      return;
    }
    out.budget = std::max(std::abs(res.alloc.p1 + res.alloc.q1 - P),
                          std::abs(res.alloc.p2 + res.alloc.q2 - P));
    const RateContext ctx = normalized_context(g.gamma);
    const MicrowaveSummary sum{ctx.sigma_r, ctx.sigma_d, g.gamma};
    const double closed_rate = sum_rates(sum, g, res.alloc, ctx.alpha).rate;
    const P1Result oracle = solve_p1(g, P, 1e-9 * std::max(1.0, P), &ctx);
    out.rate_gap = std::abs(closed_rate - oracle.rate);
    const KktReport kkt = kkt_residuals(g, P, res.alloc, &ctx);
    out.kkt = std::max({kkt.stationarity_residual, kkt.complementarity_residual,
                        kkt.feasibility_residual});
    if (kkt.strict_complementarity) {
      out.comp_gap = std::max({std::abs(res.alloc.p1 - oracle.alloc.p1),
                               std::abs(res.alloc.q1 - oracle.alloc.q1),
                               std::abs(res.alloc.p2 - oracle.alloc.p2),
                               std::abs(res.alloc.q2 - oracle.alloc.q2)});
    } else {
      out.tie = true;
    }
  });

  for (const TrialOut& out : results) {
    if (out.unclassified) ++rep.unclassified;
    if (out.tie) ++rep.ties;
    rep.max_rate_gap = std::max(rep.max_rate_gap, out.rate_gap);
    rep.max_component_gap = std::max(rep.max_component_gap, out.comp_gap);
    rep.max_kkt_residual = std::max(rep.max_kkt_residual, out.kkt);
    rep.max_budget_violation = std::max(rep.max_budget_violation, out.budget);
  }
  rep.pass = rep.unclassified == 0 && rep.max_rate_gap <= opts.rate_tol &&
             rep.max_component_gap <= opts.comp_tol &&
             rep.max_kkt_residual <= opts.kkt_tol &&
             rep.max_budget_violation <= 1e-12;
  return rep;
}

ResultTable verify_table(const VerifyReport& rep) {
  ResultTable t;
  t.columns = {"metric", "value"};
  t.add_row({std::string("trials"), static_cast<double>(rep.trials)});
  t.add_row({std::string("unclassified"), static_cast<double>(rep.unclassified)});
  t.add_row({std::string("ties"), static_cast<double>(rep.ties)});
  t.add_row({std::string("max_rate_gap"), rep.max_rate_gap});
  t.add_row({std::string("max_component_gap"), rep.max_component_gap});
  t.add_row({std::string("max_kkt_residual"), rep.max_kkt_residual});
  t.add_row({std::string("max_budget_violation"), rep.max_budget_violation});
  t.add_row({std::string("pass"), rep.pass ? 1.0 : 0.0});
  return t;
}

}  // namespace marc
