#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "marc/runner.hpp"

namespace {

using namespace marc;

struct GlobalOpts {
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

std::uint64_t env_seed() {
  if (const char* s = std::getenv("MARC_SEED")) {
    return std::strtoull(s, nullptr, 10);
  }
  return 0;
}

void emit(const ResultTable& table, const GlobalOpts& g,
          const std::string& cfg_output) {
  const std::string text = g.format == "json" ? table.to_json() : table.to_csv();
  const std::string& path = !g.output.empty() ? g.output : cfg_output;
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

// Direct-gain flags shared by allocate/thresholds/path; a config file may
// supply the tuple instead, with explicit flags taking precedence.
struct GainArgs {
  std::optional<double> r1, r2, d1, d2, gamma, alpha;
  std::string config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--r1", r1, "relay link gain of source 1");
    cmd->add_option("--r2", r2, "relay link gain of source 2");
    cmd->add_option("--d1", d1, "direct link gain of source 1");
    cmd->add_option("--d2", d2, "direct link gain of source 2");
    cmd->add_option("--gamma", gamma, "microwave imbalance parameter");
    cmd->add_option("--alpha", alpha, "bandwidth mismatch factor");
    cmd->add_option("--config", config, "JSON config file");
  }

  std::pair<MmWaveGains, RateContext> resolve(const GlobalOpts& g,
                                              std::string* cfg_output) const {
    std::optional<MmWaveGains> gains;
    std::optional<RateContext> ctx;
    if (!config.empty()) {
      RunConfig cfg = load_config(config);
      if (g.seed_set) cfg.run.seed = g.seed;
      gains = mm_gains_from_config(cfg);
      ctx = rate_context_from_config(cfg);
      if (cfg_output) *cfg_output = cfg.run.output;
    }
    if (!gains) {
      if (!r1 || !r2 || !d1 || !d2 || !gamma)
        throw CLI::ValidationError(
            "gains", "provide --r1 --r2 --d1 --d2 --gamma or --config");
      gains = MmWaveGains{*r1, *r2, *d1, *d2, *gamma};
      const double a = alpha.value_or(1.0);
      ctx = RateContext{0.0, a * std::log2(*gamma), a};
    } else {
      if (r1) gains->r1 = *r1;
      if (r2) gains->r2 = *r2;
      if (d1) gains->d1 = *d1;
      if (d2) gains->d2 = *d2;
      if (gamma) {
        gains->gamma = *gamma;
        ctx->sigma_d = ctx->sigma_r + ctx->alpha * std::log2(*gamma);
      }
    }
    return {*gains, *ctx};
  }
};

RunConfig config_for(const std::string& path, const GlobalOpts& g) {
  RunConfig cfg = load_config(path);
  if (g.seed_set) cfg.run.seed = g.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dual-band two-user multiple-access relay channel: rate regions and "
      "sum-rate-optimal mm-wave power allocation"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.seed = env_seed();
  app.add_option("--output,-o", g.output, "write the result table to this file")
      ->capture_default_str();
  app.add_option("--format", g.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", g.seed, "RNG seed (overrides MARC_SEED)");

  GainArgs alloc_gains, thr_gains, path_gains;
  double budget = 0.0, p_max = 10.0;
  int path_samples = 0;

  auto* cmd_alloc = app.add_subcommand("allocate", "optimal mm-wave power allocation");
  alloc_gains.attach(cmd_alloc);
  cmd_alloc->add_option("--budget,-P", budget, "per-source power budget")->required();

  auto* cmd_thr = app.add_subcommand("thresholds", "threshold powers of the regimes");
  thr_gains.attach(cmd_thr);

  auto* cmd_pth = app.add_subcommand("path", "regime path as the budget grows");
  path_gains.attach(cmd_pth);
  cmd_pth->add_option("--pmax", p_max, "largest budget of interest")
      ->capture_default_str();
  cmd_pth->add_option("--samples", path_samples,
                      "emit a dense allocation table with this many points "
                      "instead of the segment table");

  std::string cfg_path;
  auto* cmd_sum = app.add_subcommand("summary", "microwave band summary");
  cmd_sum->add_option("--config", cfg_path, "JSON config file")->required();

  bool vertices = false;
  auto* cmd_reg = app.add_subcommand("region", "achievable rate regions");
  cmd_reg->add_option("--config", cfg_path, "JSON config file")->required();
  cmd_reg->add_flag("--vertices", vertices, "emit polytope corners instead of constraints");

  auto* cmd_near = app.add_subcommand("check-near", "capacity conditions");
  cmd_near->add_option("--config", cfg_path, "JSON config file")->required();

  int phi_steps = 48, dsr_steps = 64;
  double dsr_max = 4.0, sweep_budget = 10.0;
  auto* cmd_sw = app.add_subcommand("sweep2d", "transmission modes over a 2-D topology");
  cmd_sw->add_option("--config", cfg_path, "JSON config file")->required();
  cmd_sw->add_option("--phi-steps", phi_steps)->capture_default_str();
  cmd_sw->add_option("--dsr-steps", dsr_steps)->capture_default_str();
  cmd_sw->add_option("--dsr-max", dsr_max)->capture_default_str();
  cmd_sw->add_option("--budget,-P", sweep_budget)->capture_default_str();

  VerifyOptions vopts;
  auto* cmd_ver = app.add_subcommand(
      "verify", "closed form vs numeric oracle agreement suite");
  cmd_ver->add_option("--trials", vopts.trials)->capture_default_str();
  cmd_ver->add_option("--rate-tol", vopts.rate_tol)->capture_default_str();
  cmd_ver->add_option("--comp-tol", vopts.comp_tol)->capture_default_str();
  cmd_ver->add_option("--threads", vopts.threads)->capture_default_str();

  double p2_pmin = 0.0, p2_pmax = 5.0, p2_tol = 1e-6;
  int p2_steps = 26, p2_iters = 200000;
  auto* cmd_pp2 = app.add_subcommand("p2", "joint budget problem, numeric solver");
  cmd_pp2->add_option("--config", cfg_path, "JSON config file")->required();
  cmd_pp2->add_option("--pmin", p2_pmin)->capture_default_str();
  cmd_pp2->add_option("--pmax", p2_pmax)->capture_default_str();
  cmd_pp2->add_option("--steps", p2_steps)->capture_default_str();
  cmd_pp2->add_option("--tol", p2_tol)->capture_default_str();
  cmd_pp2->add_option("--iters", p2_iters)->capture_default_str();

  std::string fig_id;
  auto* cmd_f = app.add_subcommand("fig", "figure-data presets");
  cmd_f->add_option("--id", fig_id, "one of 2a, 5, 6a, 6b, 7a, 7b")->required();

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0 || std::getenv("MARC_SEED") != nullptr;

  try {
    std::string cfg_output;
    if (cmd_alloc->parsed()) {
      auto [gains, ctx] = alloc_gains.resolve(g, &cfg_output);
      emit(cmd_allocate(gains, budget, ctx), g, cfg_output);
    } else if (cmd_thr->parsed()) {
      auto [gains, ctx] = thr_gains.resolve(g, &cfg_output);
      emit(cmd_thresholds(gains), g, cfg_output);
    } else if (cmd_pth->parsed()) {
      auto [gains, ctx] = path_gains.resolve(g, &cfg_output);
      emit(path_samples > 0 ? cmd_path_samples(gains, p_max, path_samples)
                            : cmd_path(gains, p_max),
           g, cfg_output);
    } else if (cmd_sum->parsed()) {
      RunConfig cfg = config_for(cfg_path, g);
      emit(cmd_summary(cfg), g, cfg.run.output);
    } else if (cmd_reg->parsed()) {
      RunConfig cfg = config_for(cfg_path, g);
      emit(cmd_region(cfg, vertices), g, cfg.run.output);
    } else if (cmd_near->parsed()) {
      RunConfig cfg = config_for(cfg_path, g);
      emit(cmd_check_near(cfg), g, cfg.run.output);
    } else if (cmd_sw->parsed()) {
      RunConfig cfg = config_for(cfg_path, g);
      emit(cmd_sweep2d(cfg, phi_steps, dsr_steps, dsr_max, sweep_budget), g,
           cfg.run.output);
    } else if (cmd_ver->parsed()) {
      vopts.seed = g.seed;
      const VerifyReport rep = run_verify(vopts);
      emit(verify_table(rep), g, "");
      std::cerr << "verify: max rate gap " << rep.max_rate_gap
                << ", max component gap " << rep.max_component_gap
                << ", max KKT residual " << rep.max_kkt_residual
                << ", unclassified " << rep.unclassified << "\n"
                << (rep.pass ? "PASS" : "FAIL") << "\n";
      return rep.pass ? 0 : 1;
    } else if (cmd_pp2->parsed()) {
      RunConfig cfg = config_for(cfg_path, g);
      emit(cmd_p2(cfg, p2_pmin, p2_pmax, p2_steps, p2_tol, p2_iters), g,
           cfg.run.output);
    } else if (cmd_f->parsed()) {
      RunOptions run;
      run.seed = g.seed;
      emit(cmd_fig(fig_id, run), g, "");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
