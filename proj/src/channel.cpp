#include "marc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "marc/quadrature.hpp"

namespace marc {

namespace {
constexpr double kLn2 = 0.6931471805599453094;
}

double pathloss_gain(double dist, double beta) {
  if (!(dist > 0.0)) throw std::domain_error("pathloss_gain: dist must be > 0");
  if (!(beta > 0.0)) throw std::domain_error("pathloss_gain: beta must be > 0");
  return std::pow(dist, -beta);
}

LinkDistances Geometry::distances() const {
  if (explicit_dists) return *explicit_dists;
  if (!(d_rd > 0.0) || !(d_sr > 0.0))
    throw std::domain_error("Geometry: distances must be > 0");
  const double d_sd =
      std::sqrt(d_sr * d_sr + d_rd * d_rd + 2.0 * d_sr * d_rd * std::cos(phi));
  if (!(d_sd > 0.0)) throw std::domain_error("Geometry: degenerate source-destination distance");
  return {d_sr, d_sr, d_sd, d_sd, d_rd};
}

namespace {

LinkGains gains_from_distances(const LinkDistances& d, double beta) {
  return {pathloss_gain(d.s1r, beta), pathloss_gain(d.s2r, beta),
          pathloss_gain(d.s1d, beta), pathloss_gain(d.s2d, beta),
          pathloss_gain(d.rd, beta)};
}

void check_gains(const LinkGains& g, const char* band) {
  if (!(g.s1r > 0.0) || !(g.s2r > 0.0) || !(g.s1d > 0.0) || !(g.s2d > 0.0) ||
      !(g.rd > 0.0))
    throw std::domain_error(std::string(band) + ": mean gains must be > 0");
}

}  // namespace

void DualBandConfig::validate() const {
  if (!(alpha >= 0.0)) throw std::domain_error("config: alpha must be >= 0");
  if (!(microwave.pathloss_exp > 0.0) || !(mmwave.pathloss_exp > 0.0))
    throw std::domain_error("config: pathloss exponents must be > 0");
  if (microwave.p1 < 0.0 || microwave.p2 < 0.0 || microwave.pr < 0.0 ||
      mmwave.pr_bar < 0.0)
    throw std::domain_error("config: fixed powers must be >= 0");
  check_gains(resolved_microwave_gains(), "microwave");
  check_gains(resolved_mmwave_gains(), "mmwave");
  if (gamma_override && !(*gamma_override > 0.0))
    throw std::domain_error("config: gamma must be > 0");
}

LinkGains DualBandConfig::resolved_microwave_gains() const {
  if (microwave_gains) return *microwave_gains;
  return gains_from_distances(geometry.distances(), microwave.pathloss_exp);
}

LinkGains DualBandConfig::resolved_mmwave_gains() const {
  if (mmwave_gains) return *mmwave_gains;
  return gains_from_distances(geometry.distances(), mmwave.pathloss_exp);
}

double ergodic_rate(Fading fading, std::span<const double> mean_gains,
                    std::span<const double> powers, const EvalOptions& opts) {
  if (mean_gains.empty() || mean_gains.size() != powers.size())
    throw std::domain_error("ergodic_rate: gain/power lists must match and be nonempty");
  for (size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] < 0.0) throw std::domain_error("ergodic_rate: negative power");
    if (!(mean_gains[i] > 0.0)) throw std::domain_error("ergodic_rate: mean gain must be > 0");
  }
  if (fading == Fading::Phase) {
    double s = 0.0;
    for (size_t i = 0; i < powers.size(); ++i) s += mean_gains[i] * powers[i];
    return std::log1p(s) / kLn2;
  }
  // Rayleigh: drop zero-power terms, then dispatch on the term count.
  double scales[8];
  int n = 0;
  for (size_t i = 0; i < powers.size(); ++i) {
    const double a = mean_gains[i] * powers[i];
    if (a > 0.0) {
      if (n == 8) throw std::domain_error("ergodic_rate: too many terms");
      scales[n++] = a;
    }
  }
  if (n == 0) return 0.0;
  if (n == 1) return rayleigh_log_mean(scales[0]);
  return rayleigh_sum_log_mean(std::span<const double>(scales, n), opts.seed,
                               opts.qmc_samples);
}

MicrowaveSummary microwave_summary(const DualBandConfig& cfg,
                                   const EvalOptions& opts) {
  cfg.validate();
  const LinkGains gw = cfg.resolved_microwave_gains();
  const LinkGains gm = cfg.resolved_mmwave_gains();
  const double p1 = cfg.microwave.p1, p2 = cfg.microwave.p2, pr = cfg.microwave.pr;

  const double relay_gains[] = {gw.s1r, gw.s2r};
  const double relay_powers[] = {p1, p2};
  const double sigma_r = ergodic_rate(cfg.microwave.fading, relay_gains, relay_powers, opts);

  const double dest_gains[] = {gw.s1d, gw.s2d, gw.rd};
  const double dest_powers[] = {p1, p2, pr};
  double sigma_d = ergodic_rate(cfg.microwave.fading, dest_gains, dest_powers, opts);
  const double bar_gain[] = {gm.rd};
  const double bar_power[] = {cfg.mmwave.pr_bar};
  sigma_d += cfg.alpha * ergodic_rate(cfg.mmwave.fading, bar_gain, bar_power, opts);

  double gamma;
  if (cfg.gamma_override) {
    gamma = *cfg.gamma_override;
  } else {
    if (!(cfg.alpha > 0.0))
      throw std::domain_error("microwave_summary: gamma undefined for alpha = 0");
    gamma = std::exp2((sigma_d - sigma_r) / cfg.alpha);
  }
  return {sigma_r, sigma_d, gamma};
}

}  // namespace marc
