#include "marc/allocator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace marc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(std::span<const double> c, double x) {
  double v = 0.0;
  for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

int poly_degree(std::span<const double> c) {
  int deg = -1;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) deg = static_cast<int>(i);
  return deg;
}

// Both real roots of c0 + c1 x + c2 x^2, ascending; stable form.
int quadratic_roots(double c0, double c1, double c2, double out[2]) {
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return 0;
  const double s = std::sqrt(disc);
  const double t = -0.5 * (c1 + (c1 >= 0.0 ? s : -s));
  double r0 = t / c2;
  double r1 = (t != 0.0) ? c0 / t : -c1 / c2 - r0;
  if (r0 > r1) std::swap(r0, r1);
  out[0] = r0;
  out[1] = r1;
  return 2;
}

double bisect_newton(std::span<const double> c, double lo, double hi) {
  double flo = poly_eval(c, lo);
  for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = poly_eval(c, mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // Newton polish, kept inside the bracket
  for (int i = 0; i < 4; ++i) {
    double f = 0.0, df = 0.0;
    for (size_t j = c.size(); j-- > 0;) {
      df = df * x + f;
      f = f * x + c[j];
    }
    if (df == 0.0) break;
    const double nx = x - f / df;
    if (nx > lo && nx < hi) x = nx;
  }
  return x;
}

// Sign-change scan on (0, hi]: geometric grid, dense near zero.
constexpr int kScanPoints = 512;

std::optional<double> scan_positive_root(std::span<const double> c, double hi,
                                         int* sign_changes) {
  const double lo = hi * 1e-15;
  const double ratio = std::pow(hi / lo, 1.0 / (kScanPoints - 1));
  double prev_x = 0.0;
  double prev_f = poly_eval(c, 0.0);
  std::optional<double> first;
  int changes = 0;
  double x = lo;
  for (int i = 0; i < kScanPoints; ++i, x *= ratio) {
    const double f = poly_eval(c, x);
    if (prev_f == 0.0 && prev_x > 0.0) {
      ++changes;
      if (!first) first = prev_x;
    } else if ((f < 0.0) != (prev_f < 0.0) && f != 0.0) {
      ++changes;
      if (!first) first = bisect_newton(c, prev_x, x);
    }
    prev_x = x;
    prev_f = f;
  }
  if (sign_changes) *sign_changes = changes;
  return first;
}

}  // namespace

double positive_root(std::span<const double> coeffs, double bracket_hi,
                     bool* multiple) {
  if (multiple) *multiple = false;
  const int deg = poly_degree(coeffs);
  if (deg < 1 || deg > 3)
    throw std::domain_error("positive_root: polynomial degree must be 1..3");
  if (!(bracket_hi > 0.0))
    throw std::domain_error("positive_root: bracket_hi must be > 0");
  if (deg == 1) {
    const double r = -coeffs[0] / coeffs[1];
    if (r > 0.0 && r <= bracket_hi) return r;
    throw NoPositiveRoot("positive_root: no positive root");
  }
  if (deg == 2) {
    double r[2];
    const int n = quadratic_roots(coeffs[0], coeffs[1], coeffs[2], r);
    for (int i = 0; i < n; ++i)
      if (r[i] > 0.0 && r[i] <= bracket_hi) {
        if (multiple && i + 1 < n && r[i + 1] > 0.0 && r[i + 1] <= bracket_hi)
          *multiple = true;
        return r[i];
      }
    throw NoPositiveRoot("positive_root: no positive root");
  }
  int changes = 0;
  const auto root = scan_positive_root(coeffs, bracket_hi, &changes);
  if (multiple) *multiple = changes > 1;
  if (!root) throw NoPositiveRoot("positive_root: no positive root in bracket");
  return *root;
}

void MmWaveGains::validate() const {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(d1 > 0.0) || !(d2 > 0.0))
    throw std::domain_error("MmWaveGains: link gains must be strictly positive");
  if (!(gamma > 0.0)) throw std::domain_error("MmWaveGains: gamma must be > 0");
}

const char* to_string(LgrId id) {
  switch (id) {
    case LgrId::L1: return "L1";
    case LgrId::A_d_d: return "A_d_d";
    case LgrId::A_d_r: return "A_d_r";
    case LgrId::A_r_d: return "A_r_d";
    case LgrId::A_r_r: return "A_r_r";
    case LgrId::A_rd_d: return "A_rd_d";
    case LgrId::A_d_rd: return "A_d_rd";
    case LgrId::A_r_rd: return "A_r_rd";
    case LgrId::A_rd_r: return "A_rd_r";
    case LgrId::A_rd_rd: return "A_rd_rd";
    case LgrId::S_r_rd: return "S_r_rd";
    case LgrId::S_rd_r: return "S_rd_r";
    case LgrId::S_rd_d: return "S_rd_d";
    case LgrId::S_d_rd: return "S_d_rd";
    case LgrId::S_rd_rd: return "S_rd_rd";
  }
  return "?";
}

std::optional<LgrId> lgr_from_string(const std::string& name) {
  static constexpr LgrId all[] = {
      LgrId::L1,     LgrId::A_d_d,  LgrId::A_d_r,  LgrId::A_r_d,
      LgrId::A_r_r,  LgrId::A_rd_d, LgrId::A_d_rd, LgrId::A_r_rd,
      LgrId::A_rd_r, LgrId::A_rd_rd, LgrId::S_r_rd, LgrId::S_rd_r,
      LgrId::S_rd_d, LgrId::S_d_rd, LgrId::S_rd_rd};
  for (LgrId id : all)
    if (name == to_string(id)) return id;
  return std::nullopt;
}

const char* to_string(RelayRegime r) {
  switch (r) {
    case RelayRegime::RS1: return "RS1";
    case RelayRegime::R1: return "R1";
    case RelayRegime::R2: return "R2";
    case RelayRegime::RS2: return "RS2";
  }
  return "?";
}

RelayRegime relay_regime(double r1, double r2, double gamma) {
  if (!(gamma > 1.0)) throw std::domain_error("relay_regime: requires gamma > 1");
  if (r1 >= gamma * r2) return RelayRegime::RS1;
  if (r2 >= gamma * r1) return RelayRegime::RS2;
  if (r1 >= r2) return RelayRegime::R1;
  return RelayRegime::R2;
}

namespace {

// rho[f] with the sign convention used by the regime conditions: the smallest
// positive root when one exists; otherwise the largest nonpositive real root
// (the condition already holds/fails at P = 0), -inf if f has no real root.
double rho_threshold(std::span<const double> c, double hi, bool* multiple) {
  bool m = false;
  try {
    const double r = positive_root(c, hi, &m);
    if (multiple && m) *multiple = true;
    return r;
  } catch (const NoPositiveRoot&) {
  }
  const int deg = poly_degree(c);
  if (deg == 2) {
    double r[2];
    if (quadratic_roots(c[0], c[1], c[2], r) == 2 && r[1] <= 0.0) return r[1];
    return -kInf;
  }
  // cubic: a real root always exists; scan (0, hi] mirrored to negatives
  std::array<double, 4> mirrored{};
  for (int i = 0; i <= deg; ++i) mirrored[i] = (i % 2 == 0) ? c[i] : -c[i];
  int changes = 0;
  const auto root = scan_positive_root(std::span<const double>(mirrored.data(), deg + 1), hi, &changes);
  if (root) return -*root;
  return -kInf;
}

}  // namespace

ThresholdPowers threshold_powers(const MmWaveGains& g) {
  g.validate();
  if (!(g.gamma > 1.0))
    throw std::domain_error("threshold_powers: requires gamma > 1");
  const double r1 = g.r1, r2 = g.r2, d1 = g.d1, d2 = g.d2, gm = g.gamma;
  const double a1 = 1.0 + r1 / d1;  // 1 + r_k/d_k appear throughout Table II
  const double a2 = 1.0 + r2 / d2;
  const double rmin = std::min(r1, r2);
  const double hi = (4.0 * gm + 2.0) / rmin + 1.0 / std::min(d1, d2) + 10.0;

  ThresholdPowers t{};
  t.p_d_d = 1.0 / r1 - 1.0 / d1;
  t.p_d_d_prime = -t.p_d_d;
  t.p_hat_d_d = 1.0 / r2 - 1.0 / d2;
  t.p_hat_d_d_prime = -t.p_hat_d_d;
  t.p_r_d = (gm - 1.0) / r1;
  t.p_d_r = (gm - 1.0) / r2;
  t.p_rd_d = (2.0 * gm - 1.0) / r1 - 1.0 / d1;
  t.p_d_rd = (2.0 * gm - 1.0) / r2 - 1.0 / d2;

  // (1 + x r1)(1 + x r2) - gamma
  {
    const double c[] = {1.0 - gm, r1 + r2, r1 * r2};
    t.p_r_r = rho_threshold(c, hi, &t.multiple_roots);
  }
  // (1 + r2/d2 + x r2)(1 + x r1) - 2 gamma
  {
    const double c[] = {a2 - 2.0 * gm, a2 * r1 + r2, r1 * r2};
    t.p_r_rd = rho_threshold(c, hi, &t.multiple_roots);
  }
  // (1 + r1/d1 + x r1)(1 + x r2) - 2 gamma
  {
    const double c[] = {a1 - 2.0 * gm, a1 * r2 + r1, r1 * r2};
    t.p_rd_r = rho_threshold(c, hi, &t.multiple_roots);
  }
  // (1 + r1/d1 + x r1)(1 + r2/d2 + x r2) - 4 gamma
  {
    const double c[] = {a1 * a2 - 4.0 * gm, a1 * r2 + a2 * r1, r1 * r2};
    t.p_rd_rd = rho_threshold(c, hi, &t.multiple_roots);
  }
  // (1 + r2/d2 + x r2)(1 + x r1)^2 - gamma (1 + r1/d1 + x r1)
  {
    const double c[] = {a2 - gm * a1, 2.0 * a2 * r1 + r2 - gm * r1,
                        a2 * r1 * r1 + 2.0 * r1 * r2, r2 * r1 * r1};
    t.pbar_r_rd = rho_threshold(c, hi, &t.multiple_roots);
  }
  // (1 + r1/d1 + x r1)(1 + x r2)^2 - gamma (1 + r2/d2 + x r2)
  {
    const double c[] = {a1 - gm * a2, 2.0 * a1 * r2 + r1 - gm * r2,
                        a1 * r2 * r2 + 2.0 * r1 * r2, r1 * r2 * r2};
    t.pbar_rd_r = rho_threshold(c, hi, &t.multiple_roots);
  }
  // ratio thresholds, signed; a zero denominator marks a regime boundary
  {
    const double num1 = gm - 1.0 + gm * r2 / d2 - r1 / d1;
    const double den1 = r1 - gm * r2;
    const double num2 = gm - 1.0 + gm * r1 / d1 - r2 / d2;
    const double den2 = r2 - gm * r1;
    if (den1 == 0.0) {
      t.pbar_rd_d = kInf;
      t.regime_boundary = true;
    } else {
      t.pbar_rd_d = num1 / den1;
    }
    if (den2 == 0.0) {
      t.pbar_d_rd = kInf;
      t.regime_boundary = true;
    } else {
      t.pbar_d_rd = num2 / den2;
    }
  }
  return t;
}

namespace {

// WF split of one source's budget between its direct and relay links.
inline void wf_split(double P, double r, double d, double& p, double& q) {
  p = 0.5 * (P + 1.0 / r - 1.0 / d);
  q = 0.5 * (P - 1.0 / r + 1.0 / d);
}

Allocation raw_lgr_allocation(const MmWaveGains& g, LgrId lgr, double P) {
  const double r1 = g.r1, r2 = g.r2, d1 = g.d1, d2 = g.d2, gm = g.gamma;
  Allocation a{0.0, 0.0, 0.0, 0.0};
  switch (lgr) {
    case LgrId::L1:
    case LgrId::A_d_d:
      a = {P, 0.0, P, 0.0};
      break;
    case LgrId::A_d_r:
      a = {P, 0.0, 0.0, P};
      break;
    case LgrId::A_r_d:
      a = {0.0, P, P, 0.0};
      break;
    case LgrId::A_r_r:
      a = {0.0, P, 0.0, P};
      break;
    case LgrId::A_rd_d:
      wf_split(P, r1, d1, a.p1, a.q1);
      a.p2 = P;
      break;
    case LgrId::A_d_rd:
      a.p1 = P;
      wf_split(P, r2, d2, a.p2, a.q2);
      break;
    case LgrId::A_r_rd:
      a.q1 = P;
      wf_split(P, r2, d2, a.p2, a.q2);
      break;
    case LgrId::A_rd_r:
      wf_split(P, r1, d1, a.p1, a.q1);
      a.q2 = P;
      break;
    case LgrId::A_rd_rd:
      wf_split(P, r1, d1, a.p1, a.q1);
      wf_split(P, r2, d2, a.p2, a.q2);
      break;
    case LgrId::S_r_rd:
      a.q1 = P;
      a.q2 = (gm / (1.0 + P * r1) - 1.0) / r2;
      a.p2 = P - a.q2;
      break;
    case LgrId::S_rd_r:
      a.q1 = (gm / (1.0 + P * r2) - 1.0) / r1;
      a.p1 = P - a.q1;
      a.q2 = P;
      break;
    case LgrId::S_rd_d:
      a.q1 = (gm - 1.0) / r1;
      a.p1 = P - a.q1;
      a.p2 = P;
      break;
    case LgrId::S_d_rd:
      a.p1 = P;
      a.q2 = (gm - 1.0) / r2;
      a.p2 = P - a.q2;
      break;
    case LgrId::S_rd_rd: {
      // saturated interior point: (1+r1 q1)(1+r2 q2) = gamma with the
      // destination-side marginals equalized across users
      const double u = P * r1 + r1 / d1 + 1.0;
      const double v = P * r2 + r2 / d2 + 1.0;
      a.q1 = (std::sqrt(gm * u / v) - 1.0) / r1;
      a.q2 = (std::sqrt(gm * v / u) - 1.0) / r2;
      a.p1 = P - a.q1;
      a.p2 = P - a.q2;
      break;
    }
  }
  return a;
}

struct Row {
  LgrId id;
  double lo, hi;
};

// The regime windows in the fixed classification order: WF rows in table
// order, then the saturated rows.
std::array<Row, 14> regime_rows(const MmWaveGains& g, const ThresholdPowers& t) {
  const RelayRegime rr = relay_regime(g.r1, g.r2, g.gamma);
  std::array<Row, 14> rows{};
  int i = 0;
  rows[i++] = {LgrId::A_d_d, 0.0, std::min(t.p_d_d, t.p_hat_d_d)};
  rows[i++] = {LgrId::A_d_r, 0.0,
               std::min({t.p_hat_d_d_prime, t.p_d_d, t.p_d_r})};
  rows[i++] = {LgrId::A_r_d, 0.0, std::min({t.p_d_d_prime, t.p_hat_d_d, t.p_r_d})};
  rows[i++] = {LgrId::A_r_r, 0.0,
               std::min({t.p_d_d_prime, t.p_hat_d_d_prime, t.p_r_r})};
  rows[i++] = {LgrId::A_rd_d, std::max(t.p_d_d, t.p_d_d_prime),
               std::min(t.p_hat_d_d, t.p_rd_d)};
  rows[i++] = {LgrId::A_d_rd, std::max(t.p_hat_d_d, t.p_hat_d_d_prime),
               std::min(t.p_d_d, t.p_d_rd)};
  rows[i++] = {LgrId::A_r_rd, std::max(t.p_hat_d_d, t.p_hat_d_d_prime),
               std::min(t.p_d_d_prime, t.p_r_rd)};
  rows[i++] = {LgrId::A_rd_r, std::max(t.p_d_d, t.p_d_d_prime),
               std::min(t.p_hat_d_d_prime, t.p_rd_r)};
  rows[i++] = {LgrId::A_rd_rd,
               std::max({t.p_d_d, t.p_hat_d_d, t.p_d_d_prime, t.p_hat_d_d_prime}),
               t.p_rd_rd};
  rows[i++] = {LgrId::S_r_rd, std::max(t.p_r_r, t.p_r_rd),
               std::min(t.pbar_r_rd, t.p_r_d)};
  rows[i++] = {LgrId::S_rd_r, std::max(t.p_r_r, t.p_rd_r),
               std::min(t.pbar_rd_r, t.p_d_r)};
  if (rr == RelayRegime::RS1) {
    rows[i++] = {LgrId::S_rd_d, std::max({t.p_r_d, t.p_rd_d, t.pbar_rd_d}), kInf};
  } else {
    rows[i++] = {LgrId::S_rd_d, std::max(t.p_r_d, t.p_rd_d), t.pbar_rd_d};
  }
  if (rr == RelayRegime::RS2) {
    rows[i++] = {LgrId::S_d_rd, std::max({t.p_d_r, t.p_d_rd, t.pbar_d_rd}), kInf};
  } else {
    rows[i++] = {LgrId::S_d_rd, std::max(t.p_d_r, t.p_d_rd), t.pbar_d_rd};
  }
  switch (rr) {
    case RelayRegime::R1:
    case RelayRegime::R2:
      rows[i++] = {LgrId::S_rd_rd,
                   std::max({t.pbar_rd_d, t.pbar_d_rd, t.pbar_rd_r, t.pbar_r_rd,
                             t.p_rd_rd}),
                   kInf};
      break;
    case RelayRegime::RS1:
      rows[i++] = {LgrId::S_rd_rd,
                   std::max({t.pbar_d_rd, t.pbar_rd_r, t.pbar_r_rd, t.p_rd_rd}),
                   t.pbar_rd_d};
      break;
    case RelayRegime::RS2:
      rows[i++] = {LgrId::S_rd_rd,
                   std::max({t.pbar_rd_d, t.pbar_rd_r, t.pbar_r_rd, t.p_rd_rd}),
                   t.pbar_d_rd};
      break;
  }
  return rows;
}

LgrId classify(const MmWaveGains& g, const ThresholdPowers& t, double P) {
  const double eps = 1e-9 * std::max(1.0, P);
  for (const Row& row : regime_rows(g, t)) {
    if (P >= row.lo - eps && P <= row.hi + eps) return row.id;
  }
  throw std::runtime_error("allocate: no regime matched (internal inconsistency)");
}

// The relay powers are the formula-bearing components (pinned values such as
// (gamma-1)/r_k must come out bit-exact); the direct powers absorb the budget.
Allocation finalize(const Allocation& raw, double P) {
  Allocation a = raw;
  a.q1 = std::clamp(a.q1, 0.0, P);
  a.p1 = P - a.q1;
  a.q2 = std::clamp(a.q2, 0.0, P);
  a.p2 = P - a.q2;
  return a;
}

}  // namespace

Allocation lgr_allocation(const MmWaveGains& g, LgrId lgr, double P) {
  return finalize(raw_lgr_allocation(g, lgr, P), P);
}

AllocationResult allocate(const MmWaveGains& g, double P) {
  g.validate();
  if (!(P >= 0.0)) throw std::domain_error("allocate: budget must be >= 0");
  if (g.gamma <= 1.0)
    return {finalize({P, 0.0, P, 0.0}, P), LgrId::L1};
  const ThresholdPowers t = threshold_powers(g);
  const LgrId id = classify(g, t, P);
  return {finalize(raw_lgr_allocation(g, id, P), P), id};
}

namespace {

// Path labels of the symmetric-direct-link tables, matched on the threshold
// orderings of the corresponding condition rows.
std::string match_path_label(const MmWaveGains& g, const ThresholdPowers& t) {
  const double scale = std::max({1.0, std::abs(t.p_d_d), std::abs(t.p_hat_d_d)});
  if (std::abs(g.d1 - g.d2) > 1e-12 * std::max(1.0, std::max(g.d1, g.d2)))
    return "";
  const double e = 1e-9 * scale;
  auto le = [e](double a, double b) { return a <= b + e; };
  RelayRegime rr = relay_regime(g.r1, g.r2, g.gamma);
  // mirrored tuples fall in R2/RS2 and carry the same label; a symmetric
  // tuple (r1 == r2) is its own mirror and matches the R2 rows directly
  if (rr == RelayRegime::RS1 || (rr == RelayRegime::R1 && g.r1 != g.r2)) {
    const MmWaveGains m = g.swapped();
    return match_path_label(m, threshold_powers(m));
  }
  if (rr == RelayRegime::R1) rr = RelayRegime::R2;
  if (rr == RelayRegime::R2) {
    if (le(0, t.p_d_d_prime) && le(t.p_d_d_prime, t.p_hat_d_d_prime) &&
        le(t.p_hat_d_d_prime, t.p_r_r))
      return "[S1]";
    if (le(0, t.p_d_d_prime) && le(t.p_d_d_prime, t.p_r_r) &&
        le(t.p_r_r, t.p_hat_d_d_prime))
      return "[S2]";
    if (le(0, t.p_r_r) && le(t.p_r_r, t.p_d_d_prime) &&
        le(t.p_d_d_prime, t.p_hat_d_d_prime))
      return "[S3]";
    if (le(0, t.p_hat_d_d) && le(t.p_hat_d_d, t.p_d_d)) return "[S4]";
    if (le(0, t.p_d_d) && le(t.p_d_d, t.p_hat_d_d_prime) &&
        le(t.p_hat_d_d_prime, t.p_rd_r))
      return "[S5]";
    if (le(0, t.p_d_d) && le(t.p_d_d, t.p_rd_r) && le(t.p_rd_r, t.p_hat_d_d_prime))
      return "[S6]";
    if (le(0, t.p_hat_d_d_prime) && le(t.p_hat_d_d_prime, t.p_d_d)) return "[S7]";
    return "";
  }
  // RS2 rows
  if (le(0, t.p_r_r) && le(t.p_r_r, t.p_d_d_prime) &&
      le(t.p_d_d_prime, t.p_hat_d_d_prime)) {
    return le(t.pbar_rd_r, t.p_d_r) ? "[T3]" : "[N1]";
  }
  if (le(0, t.p_hat_d_d) && le(t.p_hat_d_d, t.p_d_d)) {
    return le(t.p_d_d, t.p_d_rd) ? "[T4]" : "[N2]";
  }
  if (le(0, t.p_d_d) && le(t.p_d_d, t.p_hat_d_d_prime) &&
      le(t.p_hat_d_d_prime, t.p_rd_r) && le(t.p_rd_r, t.p_d_r))
    return "[T5]";
  if ((le(0, t.p_d_d) && le(t.p_d_d, t.p_rd_r) && le(t.p_rd_r, t.p_hat_d_d_prime) &&
       le(t.p_hat_d_d_prime, t.p_d_r)) ||
      (le(0, t.p_d_d) && le(t.p_d_d, t.pbar_rd_r) && le(t.pbar_rd_r, t.p_d_r) &&
       le(t.p_d_r, t.p_hat_d_d_prime)))
    return "[T6]";
  if ((le(0, t.p_hat_d_d_prime) && le(t.p_hat_d_d_prime, t.p_d_d) &&
       le(t.p_d_d, t.p_d_r)) ||
      (le(0, t.p_hat_d_d_prime) && le(t.p_hat_d_d_prime, t.p_d_r) &&
       le(t.p_d_r, t.p_d_d) && le(t.p_d_d, t.p_d_rd)))
    return "[T7]";
  if (le(0, t.p_d_d) && le(t.p_d_d, t.p_d_r) && le(t.p_d_r, t.pbar_rd_r) &&
      le(t.pbar_rd_r, t.p_hat_d_d_prime))
    return "[N3]";
  if (le(0, t.p_hat_d_d_prime) && le(t.p_hat_d_d_prime, t.p_d_r) &&
      le(t.p_d_r, t.p_d_rd) && le(t.p_d_rd, t.p_d_d))
    return "[N4]";
  if (le(0, t.p_d_r) && le(t.p_d_r, std::min(t.p_hat_d_d_prime, t.p_d_d)))
    return "[N5]";
  return "";
}

}  // namespace

LgrPath lgr_path(const MmWaveGains& g, double p_max) {
  g.validate();
  if (g.gamma <= 1.0) {
    LgrPath path;
    path.segments.push_back({LgrId::L1, 0.0, kInf});
    return path;
  }
  const ThresholdPowers t = threshold_powers(g);
  std::vector<double> bps;
  const double all[] = {t.p_d_d,   t.p_d_d_prime, t.p_hat_d_d, t.p_hat_d_d_prime,
                        t.p_r_d,   t.p_d_r,       t.p_r_r,     t.p_rd_d,
                        t.p_d_rd,  t.p_r_rd,      t.p_rd_r,    t.p_rd_rd,
                        t.pbar_r_rd, t.pbar_rd_r, t.pbar_rd_d, t.pbar_d_rd};
  for (double v : all)
    if (std::isfinite(v) && v > 0.0) bps.push_back(v);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-12 * std::max(1.0, b);
                        }),
            bps.end());
  bps.insert(bps.begin(), 0.0);

  LgrPath path;
  for (size_t i = 0; i < bps.size(); ++i) {
    const double lo = bps[i];
    const double hi = (i + 1 < bps.size()) ? bps[i + 1] : kInf;
    const double mid = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0 + lo;
    const LgrId id = classify(g, t, mid);
    if (!path.segments.empty() && path.segments.back().lgr == id) {
      path.segments.back().p_hi = hi;
    } else {
      path.segments.push_back({id, lo, hi});
    }
  }
  path.label = match_path_label(g, t);
  if (p_max > 0.0) {
    auto& segs = path.segments;
    segs.erase(std::remove_if(segs.begin(), segs.end(),
                              [p_max](const LgrSegment& s) { return s.p_lo >= p_max; }),
               segs.end());
  }
  return path;
}

SaturationInfo saturation_info(const MmWaveGains& g) {
  g.validate();
  if (!(g.gamma > 1.0))
    throw std::domain_error("saturation_info: requires gamma > 1");
  const ThresholdPowers t = threshold_powers(g);
  const RelayRegime rr = relay_regime(g.r1, g.r2, g.gamma);

  SaturationInfo info{};
  const LgrPath path = lgr_path(g, 0.0);
  for (const LgrSegment& s : path.segments) {
    if (is_saturated_lgr(s.lgr)) {
      info.p_sat = s.p_lo;
      info.saturation_lgr = s.lgr;
      break;
    }
  }
  switch (rr) {
    case RelayRegime::R1:
    case RelayRegime::R2:
      info.p_fin = std::max(
          {t.pbar_rd_d, t.pbar_d_rd, t.pbar_rd_r, t.pbar_r_rd, t.p_rd_rd});
      info.final_lgr = LgrId::S_rd_rd;
      break;
    case RelayRegime::RS1:
      info.p_fin = std::max({t.p_r_d, t.p_rd_d, t.pbar_rd_d});
      info.final_lgr = LgrId::S_rd_d;
      break;
    case RelayRegime::RS2:
      info.p_fin = std::max({t.p_d_r, t.p_d_rd, t.pbar_d_rd});
      info.final_lgr = LgrId::S_d_rd;
      break;
  }
  if (info.final_lgr == LgrId::S_rd_rd) {
    info.q_bar_1 = std::sqrt(g.gamma / (g.r2 * g.r1)) - 1.0 / g.r1;
    info.q_bar_2 = std::sqrt(g.gamma / (g.r1 * g.r2)) - 1.0 / g.r2;
  }
  return info;
}

SymmetricMode symmetric_mode(double r, double d, double gamma, double P) {
  if (!(r > 0.0) || !(d > 0.0)) throw std::domain_error("symmetric_mode: gains must be > 0");
  if (!(P >= 0.0)) throw std::domain_error("symmetric_mode: budget must be >= 0");
  if (gamma <= 1.0) return SymmetricMode::L1;
  const double sg = std::sqrt(gamma);
  if (r > d * sg) {
    // relay links significantly stronger: relay-only until they saturate
    return P < (sg - 1.0) / r ? SymmetricMode::A_r_r : SymmetricMode::S_rd_rd;
  }
  const double t_sat = (2.0 * sg - 1.0) / r - 1.0 / d;
  if (P >= t_sat) return SymmetricMode::S_rd_rd;
  if (d >= r) {
    return P < 1.0 / r - 1.0 / d ? SymmetricMode::A_d_d : SymmetricMode::A_rd_rd;
  }
  return P < 1.0 / d - 1.0 / r ? SymmetricMode::A_r_r : SymmetricMode::A_rd_rd;
}

Allocation symmetric_allocate(double r, double d, double gamma, double P) {
  const SymmetricMode m = symmetric_mode(r, d, gamma, P);
  double p = 0.0, q = 0.0;
  switch (m) {
    case SymmetricMode::L1:
    case SymmetricMode::A_d_d:
      p = P;
      break;
    case SymmetricMode::A_r_r:
      q = P;
      break;
    case SymmetricMode::A_rd_rd:
      wf_split(P, r, d, p, q);
      break;
    case SymmetricMode::S_rd_rd:
      q = (std::sqrt(gamma) - 1.0) / r;
      p = P - q;
      break;
  }
  p = std::clamp(p, 0.0, P);
  q = P - p;
  return {p, q, p, q};
}

const char* to_string(SymmetricMode m) {
  switch (m) {
    case SymmetricMode::L1: return "L1";
    case SymmetricMode::A_r_r: return "A_r_r";
    case SymmetricMode::A_d_d: return "A_d_d";
    case SymmetricMode::A_rd_rd: return "A_rd_rd";
    case SymmetricMode::S_rd_rd: return "S_rd_rd";
  }
  return "?";
}

std::vector<TopologyCell> sweep_2d_topology(const DualBandConfig& tmpl,
                                            std::span<const double> phi_grid,
                                            std::span<const double> dsr_grid,
                                            double budget,
                                            const EvalOptions& opts) {
  std::vector<TopologyCell> cells;
  cells.reserve(phi_grid.size() * dsr_grid.size());
  for (double phi : phi_grid) {
    for (double d_sr : dsr_grid) {
      DualBandConfig cfg = tmpl;
      cfg.geometry.phi = phi;
      cfg.geometry.d_sr = d_sr;
      cfg.geometry.explicit_dists.reset();
      cfg.microwave_gains.reset();
      cfg.mmwave_gains.reset();
      const LinkDistances dist = cfg.geometry.distances();
      const MicrowaveSummary sum = microwave_summary(cfg, opts);
      const double r = pathloss_gain(dist.s1r, cfg.mmwave.pathloss_exp);
      const double d = pathloss_gain(dist.s1d, cfg.mmwave.pathloss_exp);
      TopologyCell cell;
      cell.phi = phi;
      cell.d_sr = d_sr;
      cell.x = -d_sr * std::cos(phi);
      cell.y = d_sr * std::sin(phi);
      cell.gamma = sum.gamma;
      cell.mode = symmetric_mode(r, d, sum.gamma, budget);
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace marc
