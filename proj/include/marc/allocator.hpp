#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "marc/channel.hpp"

namespace marc {

// mm-wave link gains seen by the sum-rate problem: r_k for the source-relay
// links, d_k for the source-destination links, plus the microwave imbalance
// parameter gamma = 2^((sigma_D - sigma_R)/alpha).
struct MmWaveGains {
  double r1, r2, d1, d2;
  double gamma;

  void validate() const;
  MmWaveGains swapped() const { return {r2, r1, d2, d1, gamma}; }
};

// Link-gain regimes. L1 is the single gamma <= 1 regime; the 14 others
// partition the gamma > 1 case. Names follow the transmission status of the
// two sources: d = direct link only, r = relay link only, rd = both.
enum class LgrId {
  L1,
  A_d_d, A_d_r, A_r_d, A_r_r,
  A_rd_d, A_d_rd, A_r_rd, A_rd_r, A_rd_rd,
  S_r_rd, S_rd_r, S_rd_d, S_d_rd, S_rd_rd,
};

const char* to_string(LgrId id);
std::optional<LgrId> lgr_from_string(const std::string& name);
inline bool is_saturated_lgr(LgrId id) {
  return id == LgrId::S_r_rd || id == LgrId::S_rd_r || id == LgrId::S_rd_d ||
         id == LgrId::S_d_rd || id == LgrId::S_rd_rd;
}

// Relay-link gain partition: RS1: r1 >= g*r2, R1: g*r2 > r1 >= r2,
// R2: g*r1 > r2 > r1, RS2: r2 >= g*r1.
enum class RelayRegime { RS1, R1, R2, RS2 };
const char* to_string(RelayRegime r);
RelayRegime relay_regime(double r1, double r2, double gamma);

// The 16 threshold powers that delimit the regimes. Values may be negative
// (the condition they delimit holds from P = 0) or infinite (it never binds).
struct ThresholdPowers {
  double p_d_d, p_d_d_prime;          // 1/r1 - 1/d1 and its negative
  double p_hat_d_d, p_hat_d_d_prime;  // 1/r2 - 1/d2 and its negative
  double p_r_d, p_d_r;                // (g-1)/r1, (g-1)/r2
  double p_r_r;                       // root of (1+x r1)(1+x r2) - g
  double p_rd_d, p_d_rd;              // (2g-1)/r_k - 1/d_k
  double p_r_rd, p_rd_r;              // roots of the 2g quadratics
  double p_rd_rd;                     // root of (1+r1/d1+x r1)(1+r2/d2+x r2) - 4g
  double pbar_r_rd, pbar_rd_r;        // smallest positive roots of the cubics
  double pbar_rd_d, pbar_d_rd;        // ratio thresholds, signed
  bool regime_boundary = false;       // a ratio threshold had a zero denominator
  bool multiple_roots = false;        // a cubic had more than one positive root
};

struct NoPositiveRoot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest x > 0 with f(x) = 0 for f given by ascending coefficients
// (degree <= 3). Quadratics are solved in closed form, cubics by bracketed
// bisection on (0, bracket_hi] with a Newton polish. Throws NoPositiveRoot
// if f has no root there. *multiple is set when more than one positive root
// is detected.
double positive_root(std::span<const double> coeffs, double bracket_hi,
                     bool* multiple = nullptr);

ThresholdPowers threshold_powers(const MmWaveGains& g);

struct Allocation {
  double p1, q1, p2, q2;
};

struct AllocationResult {
  Allocation alloc;
  LgrId lgr;
};

// Sum-rate optimal mm-wave power allocation under the budget p_k + q_k = P.
AllocationResult allocate(const MmWaveGains& g, double P);

// Closed form of a specific regime row evaluated at budget P, without
// testing the regime's conditions. Used for boundary/continuity analysis.
Allocation lgr_allocation(const MmWaveGains& g, LgrId lgr, double P);

struct LgrSegment {
  LgrId lgr;
  double p_lo;
  double p_hi;  // +inf on the last segment
};

struct LgrPath {
  std::vector<LgrSegment> segments;
  std::string label;  // "[S1]".."[S7]", "[T3]".."[T7]", "[N1]".."[N5]" or ""
};

// Active-regime sequence as the budget grows, by pointwise classification on
// the refinement induced by the sorted positive thresholds. Segments with
// p_lo >= p_max are dropped; the label is derived from the full path.
LgrPath lgr_path(const MmWaveGains& g, double p_max);

struct SaturationInfo {
  double p_sat;
  double p_fin;
  LgrId saturation_lgr;
  LgrId final_lgr;
  // Budget -> infinity relay-power limits; populated only when the final
  // regime is S_rd_rd, where q_k -> sqrt(g/(r_l r_k)) - 1/r_k.
  std::optional<double> q_bar_1, q_bar_2;
};

SaturationInfo saturation_info(const MmWaveGains& g);

// Symmetric special case r1 = r2 = r, d1 = d2 = d: the optimal allocation is
// (p, q, p, q) with three closed-form phases; saturated q = (sqrt(g)-1)/r.
Allocation symmetric_allocate(double r, double d, double gamma, double P);

enum class SymmetricMode { L1, A_r_r, A_d_d, A_rd_rd, S_rd_rd };
const char* to_string(SymmetricMode m);
SymmetricMode symmetric_mode(double r, double d, double gamma, double P);

struct TopologyCell {
  double phi, d_sr;
  double x, y;  // source coordinates, relay at the origin
  double gamma;
  SymmetricMode mode;
};

// Optimal transmission mode over a (phi, d_sr) grid of symmetric source
// placements; gamma is computed from the microwave summary per cell.
std::vector<TopologyCell> sweep_2d_topology(const DualBandConfig& tmpl,
                                            std::span<const double> phi_grid,
                                            std::span<const double> dsr_grid,
                                            double budget,
                                            const EvalOptions& opts = {});

}  // namespace marc
