#include "marc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace marc {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw std::invalid_argument("config: " + where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
  }
}

double number_at(const json& obj, const std::string& where, const std::string& key,
                 double fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required)
      throw std::invalid_argument("config: missing key '" + key + "' in " + where);
    return fallback;
  }
  if (!obj[key].is_number())
    throw std::invalid_argument("config: '" + key + "' in " + where + " must be a number");
  return obj[key].get<double>();
}

Fading fading_from(const json& obj, const std::string& where) {
  if (!obj.contains("fading")) return Fading::Phase;
  const std::string s = obj["fading"].get<std::string>();
  if (s == "phase") return Fading::Phase;
  if (s == "rayleigh") return Fading::Rayleigh;
  throw std::invalid_argument("config: fading in " + where +
                              " must be \"phase\" or \"rayleigh\"");
}

LinkGains gains_from(const json& obj, const std::string& where) {
  require_keys(obj, where, {"s1r", "s2r", "s1d", "s2d", "rd"});
  LinkGains g{};
  g.s1r = number_at(obj, where, "s1r", 0.0, true);
  g.s2r = number_at(obj, where, "s2r", 0.0, true);
  g.s1d = number_at(obj, where, "s1d", 0.0, true);
  g.s2d = number_at(obj, where, "s2d", 0.0, true);
  g.rd = number_at(obj, where, "rd", 0.0, true);
  return g;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(doc, "top level",
               {"alpha", "microwave", "mmwave", "geometry", "gains", "gamma", "run"});

  RunConfig cfg;
  cfg.channel.alpha = number_at(doc, "top level", "alpha", 1.0);

  if (doc.contains("microwave")) {
    const json& mw = doc["microwave"];
    require_keys(mw, "microwave", {"pathloss_exp", "fading", "powers"});
    cfg.channel.microwave.pathloss_exp = number_at(mw, "microwave", "pathloss_exp", 2.0);
    cfg.channel.microwave.fading = fading_from(mw, "microwave");
    if (mw.contains("powers")) {
      const json& p = mw["powers"];
      require_keys(p, "microwave.powers", {"p1", "p2", "pr"});
      cfg.channel.microwave.p1 = number_at(p, "microwave.powers", "p1", 0.0);
      cfg.channel.microwave.p2 = number_at(p, "microwave.powers", "p2", 0.0);
      cfg.channel.microwave.pr = number_at(p, "microwave.powers", "pr", 0.0);
    }
  }
  if (doc.contains("mmwave")) {
    const json& mm = doc["mmwave"];
    require_keys(mm, "mmwave", {"pathloss_exp", "fading", "powers"});
    cfg.channel.mmwave.pathloss_exp = number_at(mm, "mmwave", "pathloss_exp", 4.0);
    cfg.channel.mmwave.fading = fading_from(mm, "mmwave");
    if (mm.contains("powers")) {
      const json& p = mm["powers"];
      require_keys(p, "mmwave.powers",
                   {"pr_bar", "p1_hat", "p2_hat", "p1_bar", "p2_bar"});
      cfg.channel.mmwave.pr_bar = number_at(p, "mmwave.powers", "pr_bar", 0.0);
      cfg.mm_powers.p1_hat = number_at(p, "mmwave.powers", "p1_hat", 0.0);
      cfg.mm_powers.p2_hat = number_at(p, "mmwave.powers", "p2_hat", 0.0);
      cfg.mm_powers.p1_bar = number_at(p, "mmwave.powers", "p1_bar", 0.0);
      cfg.mm_powers.p2_bar = number_at(p, "mmwave.powers", "p2_bar", 0.0);
    }
  }
  if (doc.contains("geometry")) {
    const json& geo = doc["geometry"];
    require_keys(geo, "geometry", {"d_rd", "d_sr", "phi", "distances"});
    cfg.channel.geometry.d_rd = number_at(geo, "geometry", "d_rd", 1.0);
    cfg.channel.geometry.d_sr = number_at(geo, "geometry", "d_sr", 1.0);
    cfg.channel.geometry.phi = number_at(geo, "geometry", "phi", 0.0);
    if (geo.contains("distances")) {
      const json& d = geo["distances"];
      require_keys(d, "geometry.distances", {"s1r", "s2r", "s1d", "s2d", "rd"});
      LinkDistances ld{};
      ld.s1r = number_at(d, "geometry.distances", "s1r", 0.0, true);
      ld.s2r = number_at(d, "geometry.distances", "s2r", 0.0, true);
      ld.s1d = number_at(d, "geometry.distances", "s1d", 0.0, true);
      ld.s2d = number_at(d, "geometry.distances", "s2d", 0.0, true);
      ld.rd = number_at(d, "geometry.distances", "rd", 0.0, true);
      cfg.channel.geometry.explicit_dists = ld;
    }
  }
  if (doc.contains("gains")) {
    const json& g = doc["gains"];
    require_keys(g, "gains", {"microwave", "mmwave"});
    if (g.contains("microwave"))
      cfg.channel.microwave_gains = gains_from(g["microwave"], "gains.microwave");
    if (g.contains("mmwave"))
      cfg.channel.mmwave_gains = gains_from(g["mmwave"], "gains.mmwave");
  }
  if (doc.contains("gamma"))
    cfg.channel.gamma_override = number_at(doc, "top level", "gamma", 0.0, true);
  if (doc.contains("run")) {
    const json& run = doc["run"];
    require_keys(run, "run", {"seed", "qmc_samples", "tol", "output"});
    if (run.contains("seed")) {
      if (!run["seed"].is_number_integer())
        throw std::invalid_argument("config: run.seed must be an integer");
      cfg.run.seed = run["seed"].get<std::uint64_t>();
    }
    cfg.run.qmc_samples =
        static_cast<int>(number_at(run, "run", "qmc_samples", cfg.run.qmc_samples));
    if (cfg.run.qmc_samples <= 0)
      throw std::invalid_argument("config: run.qmc_samples must be > 0");
    cfg.run.tol = number_at(run, "run", "tol", cfg.run.tol);
    if (run.contains("output")) cfg.run.output = run["output"].get<std::string>();
  }
  cfg.channel.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

MmWaveGains mm_gains_from_config(const RunConfig& cfg) {
  const LinkGains gm = cfg.channel.resolved_mmwave_gains();
  const MicrowaveSummary sum = microwave_summary(cfg.channel, cfg.eval());
  return {gm.s1r, gm.s2r, gm.s1d, gm.s2d, sum.gamma};
}

RateContext rate_context_from_config(const RunConfig& cfg) {
  const MicrowaveSummary sum = microwave_summary(cfg.channel, cfg.eval());
  return {sum.sigma_r, sum.sigma_d, cfg.channel.alpha};
}

}  // namespace marc
