#include "marc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace marc {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kGolden = 0.6180339887498948482;  // (sqrt(5)-1)/2

double log2_1p(double x) { return std::log1p(x) / kLn2; }

struct P1Objective {
  const MmWaveGains& g;
  double P;
  RateContext ctx;

  double rate(double q1, double q2) const {
    const double direct =
        log2_1p(g.d1 * (P - q1)) + log2_1p(g.d2 * (P - q2));
    const double relay = log2_1p(g.r1 * q1) + log2_1p(g.r2 * q2);
    const double sr = ctx.sigma_r + ctx.alpha * (relay + direct);
    const double sd = ctx.sigma_d + ctx.alpha * direct;
    return std::min(sr, sd);
  }
};

// Golden-section maximization of a unimodal f on [lo, hi]; returns the best
// sampled point. eval counts objective evaluations.
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol,
                                     int& evals) {
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  double best_x = fc >= fd ? c : d;
  double best_f = std::max(fc, fd);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
    ++evals;
    if (fc > best_f) { best_f = fc; best_x = c; }
    if (fd > best_f) { best_f = fd; best_x = d; }
  }
  return {best_x, best_f};
}

}  // namespace

RateContext normalized_context(double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("normalized_context: gamma must be > 0");
  return {0.0, std::log2(gamma), 1.0};
}

P1Result solve_p1(const MmWaveGains& g, double P, double tol,
                  const RateContext* ctx) {
  g.validate();
  if (!(P >= 0.0)) throw std::domain_error("solve_p1: budget must be >= 0");
  if (!(tol > 0.0)) throw std::domain_error("solve_p1: tol must be > 0");
  const RateContext rc = ctx ? *ctx : normalized_context(g.gamma);
  P1Result res{};
  if (P == 0.0) {
    res.alloc = {0.0, 0.0, 0.0, 0.0};
    res.rate = std::min(rc.sigma_r, rc.sigma_d);
    res.converged = true;
    return res;
  }
  const P1Objective obj{g, P, rc};
  int evals = 0;
  auto inner = [&](double q1) {
    return golden_max([&](double q2) { return obj.rate(q1, q2); }, 0.0, P, tol,
                      evals);
  };
  auto [q1, f1] =
      golden_max([&](double q1) { return inner(q1).second; }, 0.0, P, tol, evals);
  auto [q2, rate] = inner(q1);
  res.alloc = {P - q1, q1, P - q2, q2};
  res.rate = rate;
  res.iterations = evals;
  res.converged = true;
  return res;
}

namespace {

// Euclidean projection onto {x >= 0, sum(x) = total}.
template <size_t N>
void project_simplex(std::array<double, N>& x, double total) {
  std::array<double, N> u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  int k = 0;
  for (size_t j = 0; j < N; ++j) {
    css += u[j];
    const double t = (css - total) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) {
      tau = t;
      k = static_cast<int>(j + 1);
    }
  }
  (void)k;
  for (double& v : x) v = std::max(v - tau, 0.0);
}

struct P2Objective {
  double d1, d2, r1, r2;           // mm-wave source link gains
  double g1r, g2r, g1d, g2d, grd;  // microwave gains (phase fading)
  double grd_bar;                  // mm-wave relay->destination gain
  double alpha;

  // variable order: p1, q1, p2, q2, P1, P2, PR, PR_bar
  double sigma_r(const std::array<double, 8>& x) const {
    return log2_1p(g1r * x[4] + g2r * x[5]);
  }
  double sigma_d(const std::array<double, 8>& x) const {
    return log2_1p(g1d * x[4] + g2d * x[5] + grd * x[6]) +
           alpha * log2_1p(grd_bar * x[7]);
  }
  double big_r(const std::array<double, 8>& x) const {
    return sigma_r(x) + alpha * (log2_1p(d1 * x[0]) + log2_1p(r1 * x[1]) +
                                 log2_1p(d2 * x[2]) + log2_1p(r2 * x[3]));
  }
  double big_d(const std::array<double, 8>& x) const {
    return sigma_d(x) + alpha * (log2_1p(d1 * x[0]) + log2_1p(d2 * x[2]));
  }
  void grad_r(const std::array<double, 8>& x, std::array<double, 8>& g) const {
    const double s = 1.0 + g1r * x[4] + g2r * x[5];
    g = {alpha * d1 / (1.0 + d1 * x[0]), alpha * r1 / (1.0 + r1 * x[1]),
         alpha * d2 / (1.0 + d2 * x[2]), alpha * r2 / (1.0 + r2 * x[3]),
         g1r / s, g2r / s, 0.0, 0.0};
    for (double& v : g) v /= kLn2;
  }
  void grad_d(const std::array<double, 8>& x, std::array<double, 8>& g) const {
    const double s = 1.0 + g1d * x[4] + g2d * x[5] + grd * x[6];
    g = {alpha * d1 / (1.0 + d1 * x[0]), 0.0,
         alpha * d2 / (1.0 + d2 * x[2]), 0.0,
         g1d / s, g2d / s, grd / s,
         alpha * grd_bar / (1.0 + grd_bar * x[7])};
    for (double& v : g) v /= kLn2;
  }
};

}  // namespace

P2Result solve_p2(const DualBandConfig& cfg, double P, double tol,
                  int max_iters, const EvalOptions& opts) {
  (void)opts;
  cfg.validate();
  if (!(P >= 0.0)) throw std::domain_error("solve_p2: budget must be >= 0");
  if (cfg.microwave.fading != Fading::Phase || cfg.mmwave.fading != Fading::Phase)
    throw std::domain_error("solve_p2: phase fading required");
  const LinkGains gw = cfg.resolved_microwave_gains();
  const LinkGains gm = cfg.resolved_mmwave_gains();
  const P2Objective obj{gm.s1d, gm.s2d, gm.s1r, gm.s2r,
                        gw.s1r, gw.s2r, gw.s1d, gw.s2d, gw.rd,
                        gm.rd,  cfg.alpha};

  P2Result res{};
  if (P == 0.0) {
    res.converged = true;
    return res;
  }
  std::array<double, 8> x{};
  x.fill(P / 8.0);
  std::array<double, 8> best = x;
  auto value = [&](const std::array<double, 8>& v) {
    return std::min(obj.big_r(v), obj.big_d(v));
  };
  double fbest = value(x);
  const double c = 0.25 * std::max(1.0, P);
  std::array<double, 8> g{}, gr{}, gd{};
  double fbest_checkpoint = fbest;
  const int checkpoint = std::max(1, max_iters * 9 / 10);
  for (int t = 1; t <= max_iters; ++t) {
    const double fr = obj.big_r(x);
    const double fd = obj.big_d(x);
    if (fr < fd - 1e-10) {
      obj.grad_r(x, g);
    } else if (fd < fr - 1e-10) {
      obj.grad_d(x, g);
    } else {
      obj.grad_r(x, gr);
      obj.grad_d(x, gd);
      for (int i = 0; i < 8; ++i) g[i] = 0.5 * (gr[i] + gd[i]);
    }
    const double step = c / std::sqrt(static_cast<double>(t));
    for (int i = 0; i < 8; ++i) x[i] += step * g[i];
    project_simplex(x, P);
    const double f = std::min(fr, fd);
    if (f > fbest) {
      fbest = f;
      best = x;
    }
    if (t == checkpoint) fbest_checkpoint = fbest;
  }
  res.alloc = {best[0], best[1], best[2], best[3]};
  res.micro_p1 = best[4];
  res.micro_p2 = best[5];
  res.micro_pr = best[6];
  res.mm_pr_bar = best[7];
  res.rate = value(best);
  res.iterations = max_iters;
  // converged when the tail of the schedule no longer improves the incumbent
  res.converged = (fbest - fbest_checkpoint) <= std::max(tol, tol * std::abs(fbest));
  return res;
}

KktReport kkt_residuals(const MmWaveGains& g, double P, const Allocation& alloc,
                        const RateContext* ctx) {
  g.validate();
  const RateContext rc = ctx ? *ctx : normalized_context(g.gamma);
  const double p1 = alloc.p1, q1 = alloc.q1, p2 = alloc.p2, q2 = alloc.q2;

  KktReport rep{};
  rep.feasibility_residual = std::max({std::abs(p1 + q1 - P), std::abs(p2 + q2 - P),
                                       -std::min({p1, q1, p2, q2, 0.0})});

  const double direct = log2_1p(g.d1 * p1) + log2_1p(g.d2 * p2);
  const double relay = log2_1p(g.r1 * q1) + log2_1p(g.r2 * q2);
  const double sr = rc.sigma_r + rc.alpha * (relay + direct);
  const double sd = rc.sigma_d + rc.alpha * direct;
  const double scale = std::max({1.0, std::abs(sr), std::abs(sd)});

  // lambda recovery: away from saturation the binding sum rate pins lambda;
  // at saturation it is solved from stationarity of an interior (p_k, q_k)
  // pair, defaulting to the unsaturated convention at degenerate corners.
  const bool saturated = std::abs(sr - sd) <= 1e-9 * scale;
  double lambda1;
  if (!saturated) {
    lambda1 = sr < sd ? 1.0 : 0.0;
  } else if (q1 > 1e-12 && p1 > 1e-12) {
    lambda1 = g.d1 * (1.0 + g.r1 * q1) / (g.r1 * (1.0 + g.d1 * p1));
  } else if (q2 > 1e-12 && p2 > 1e-12) {
    lambda1 = g.d2 * (1.0 + g.r2 * q2) / (g.r2 * (1.0 + g.d2 * p2));
  } else {
    lambda1 = 1.0;
  }
  rep.lambda1 = lambda1;
  rep.lambda2 = 1.0 - lambda1;

  const double gp1 = rc.alpha * g.d1 / ((1.0 + g.d1 * p1) * kLn2);
  const double gq1 = rc.alpha * lambda1 * g.r1 / ((1.0 + g.r1 * q1) * kLn2);
  const double gp2 = rc.alpha * g.d2 / ((1.0 + g.d2 * p2) * kLn2);
  const double gq2 = rc.alpha * lambda1 * g.r2 / ((1.0 + g.r2 * q2) * kLn2);
  rep.mu1 = std::max(gp1, gq1);
  rep.mu2 = std::max(gp2, gq2);
  rep.rho1 = rep.mu1 - gp1;
  rep.rho2 = rep.mu1 - gq1;
  rep.rho3 = rep.mu2 - gp2;
  rep.rho4 = rep.mu2 - gq2;

  // dual feasibility: lambda in [0,1]; rho >= 0 holds by construction of mu
  rep.stationarity_residual =
      std::max({0.0, -lambda1, lambda1 - 1.0, -rep.rho1, -rep.rho2, -rep.rho3,
                -rep.rho4});
  const double rate = std::min(sr, sd);
  rep.complementarity_residual =
      std::max({std::abs(rep.rho1 * p1), std::abs(rep.rho2 * q1),
                std::abs(rep.rho3 * p2), std::abs(rep.rho4 * q2),
                std::abs(lambda1 * (rate - sr)),
                std::abs(rep.lambda2 * (rate - sd))});

  const double power_tol = 1e-7 * std::max(1.0, P);
  const double dual_tol = 1e-7 * std::max({1.0, rep.mu1, rep.mu2});
  const double rho[4] = {rep.rho1, rep.rho2, rep.rho3, rep.rho4};
  const double pw[4] = {p1, q1, p2, q2};
  bool strict = true;
  for (int i = 0; i < 4; ++i)
    if (pw[i] <= power_tol && rho[i] <= dual_tol) strict = false;
  if (saturated && (lambda1 <= 1e-7 || lambda1 >= 1.0 - 1e-7)) strict = false;
  rep.strict_complementarity = strict;
  return rep;
}

}  // namespace marc
