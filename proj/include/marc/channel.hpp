#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace marc {

enum class Fading { Phase, Rayleigh };

// Mean channel gain 1/dist^beta. For Rayleigh links this is the mean of the
// exponentially distributed gain; for phase fading it is the gain itself.
double pathloss_gain(double dist, double beta);

// Per-link distances, source k in {1,2}, relay R, destination D.
struct LinkDistances {
  double s1r, s2r, s1d, s2d, rd;
};

// Per-link mean gains in one band, same layout as LinkDistances.
struct LinkGains {
  double s1r, s2r, s1d, s2d, rd;
};

// 2-D placement: relay at the origin, destination at distance d_rd on the
// axis, sources at distance d_sr from the relay under angle phi, so that
// d_sd = sqrt(d_sr^2 + d_rd^2 + 2 d_sr d_rd cos(phi)).
struct Geometry {
  double d_rd = 1.0;
  double d_sr = 1.0;
  double phi = 0.0;
  std::optional<LinkDistances> explicit_dists;  // overrides the 2-D layout

  LinkDistances distances() const;
};

struct MicrowaveBand {
  double pathloss_exp = 2.0;
  Fading fading = Fading::Phase;
  double p1 = 0.0, p2 = 0.0, pr = 0.0;  // fixed transmit powers
};

struct MmWaveBand {
  double pathloss_exp = 4.0;
  Fading fading = Fading::Phase;
  double pr_bar = 0.0;  // fixed relay->destination power
};

struct DualBandConfig {
  MicrowaveBand microwave;
  MmWaveBand mmwave;
  double alpha = 1.0;  // bandwidth mismatch factor, >= 0
  Geometry geometry;
  std::optional<LinkGains> microwave_gains;  // overrides geometry-derived gains
  std::optional<LinkGains> mmwave_gains;
  std::optional<double> gamma_override;  // takes precedence over the computed value

  void validate() const;
  LinkGains resolved_microwave_gains() const;
  LinkGains resolved_mmwave_gains() const;
};

struct MicrowaveSummary {
  double sigma_r;  // bits/use
  double sigma_d;  // bits/use
  double gamma;    // 2^((sigma_d - sigma_r)/alpha)
};

struct EvalOptions {
  std::uint64_t seed = 0;
  int qmc_samples = 1 << 16;
};

// E[log2(1 + sum_i G_i P_i)] where the G_i are the (per-link independent)
// gains of the given fading model with the given means.
double ergodic_rate(Fading fading, std::span<const double> mean_gains,
                    std::span<const double> powers, const EvalOptions& opts = {});

// sigma_R, sigma_D and gamma of the fixed microwave-band operation.
MicrowaveSummary microwave_summary(const DualBandConfig& cfg,
                                   const EvalOptions& opts = {});

}  // namespace marc
