#include "marc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace marc {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGlN = 12;
constexpr double kGlX[kGlN] = {
    -0.9815606342467192506906, -0.9041172563704748566785,
    -0.7699026741943046870369, -0.5873179542866174472967,
    -0.3678314989981801937527, -0.1252334085114689154724,
    0.1252334085114689154724,  0.3678314989981801937527,
    0.5873179542866174472967,  0.7699026741943046870369,
    0.9041172563704748566785,  0.9815606342467192506906};
constexpr double kGlW[kGlN] = {
    0.0471753363865118271946, 0.1069393259953184309603,
    0.1600783285433462263347, 0.2031674267230659217491,
    0.2334925365383548087609, 0.2491470458134027850006,
    0.2491470458134027850006, 0.2334925365383548087609,
    0.2031674267230659217491, 0.1600783285433462263347,
    0.1069393259953184309603, 0.0471753363865118271946};

// Halton bases; integrands here have at most a handful of dimensions.
constexpr std::uint32_t kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

namespace detail {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double radical_inverse(std::uint64_t i, std::uint32_t base) {
  double inv = 1.0 / base;
  double f = inv;
  double x = 0.0;
  while (i > 0) {
    x += static_cast<double>(i % base) * f;
    i /= base;
    f *= inv;
  }
  return x;
}

}  // namespace detail

double rayleigh_log_mean(double a) {
  if (a < 0.0) throw std::domain_error("rayleigh_log_mean: negative scale");
  if (a == 0.0) return 0.0;
  // int_0^inf e^-t ln(1+a t) dt on panels [0,t0] and log-spaced t0..T.
  // The tail beyond T = 46 is below e^-46 * ln(1+aT), negligible at double
  // precision for any a of practical magnitude.
  constexpr double kT0 = 1e-7;
  constexpr double kT1 = 46.0;
  constexpr int kPanels = 28;
  const double ratio = std::log(kT1 / kT0) / kPanels;
  double sum = 0.0;
  double lo = 0.0, hi = kT0;
  for (int p = 0; p <= kPanels; ++p) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int j = 0; j < kGlN; ++j) {
      const double t = mid + half * kGlX[j];
      acc += kGlW[j] * std::exp(-t) * std::log1p(a * t);
    }
    sum += half * acc;
    lo = hi;
    hi = kT0 * std::exp(ratio * (p + 1));
  }
  return sum / kLn2;
}

double rayleigh_sum_log_mean(std::span<const double> a, std::uint64_t seed,
                             int samples) {
  if (samples <= 0) throw std::domain_error("rayleigh_sum_log_mean: samples <= 0");
  const int dims = static_cast<int>(a.size());
  if (dims == 0) return 0.0;
  if (dims == 1) return rayleigh_log_mean(a[0]);
  if (dims > 8) throw std::domain_error("rayleigh_sum_log_mean: too many terms");
  // Cranley-Patterson rotation of the Halton sequence, shift keyed on
  // (seed, dimension) only, so sample i is a pure function of (seed, i, dim).
  double shift[8];
  for (int d = 0; d < dims; ++d) {
    shift[d] = static_cast<double>(detail::mix64(seed ^ (0xD1B54A32D192ED03ull * (d + 1))) >> 11) *
               0x1.0p-53;
  }
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    double s = 0.0;
    for (int d = 0; d < dims; ++d) {
      double u = detail::radical_inverse(static_cast<std::uint64_t>(i) + 1, kPrimes[d]) + shift[d];
      if (u >= 1.0) u -= 1.0;
      // inverse CDF of exp(1); 1-u stays away from 0
      s += a[d] * (-std::log1p(-u));
    }
    acc += std::log1p(s);
  }
  return acc / (samples * kLn2);
}

}  // namespace marc
