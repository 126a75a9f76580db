#pragma once

#include <cstdint>
#include <span>

namespace marc {

// E[log2(1 + a*X)] with X ~ exp(1), evaluated by deterministic quadrature
// (composite Gauss-Legendre on log-spaced panels). a >= 0.
double rayleigh_log_mean(double a);

// E[log2(1 + sum_i a_i*X_i)] with X_i ~ exp(1) i.i.d., by seeded quasi-Monte
// Carlo (shifted Halton). Sample i depends only on (seed, i, dimension), so
// the result is independent of evaluation order and parallel scheduling.
double rayleigh_sum_log_mean(std::span<const double> a, std::uint64_t seed,
                             int samples);

namespace detail {
// SplitMix64 avalanche; used for counter-based seeding.
std::uint64_t mix64(std::uint64_t x);
// Radical-inverse (van der Corput) in the given prime base.
double radical_inverse(std::uint64_t i, std::uint32_t base);
}  // namespace detail

}  // namespace marc
