#include <cmath>
#include <vector>

#include "common/expint_oracle.hpp"
#include "doctest.h"
#include "marc/quadrature.hpp"

using namespace marc;

TEST_CASE("single-term mean matches the exponential-integral closed form") {
  // log-spaced scales across and beyond the operating range
  for (int i = 0; i <= 120; ++i) {
    const double a = std::pow(10.0, -3.0 + 6.0 * i / 120.0);
    const double want = marc_test::rayleigh_log_mean_closed(a);
    CHECK(rayleigh_log_mean(a) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("single-term small-scale limit is a/ln2") {
  const double a = 1e-9;
  CHECK(rayleigh_log_mean(a) ==
        doctest::Approx(a / 0.6931471805599453).epsilon(1e-5));
  CHECK(rayleigh_log_mean(0.0) == 0.0);
}

TEST_CASE("multi-term mean matches a tensor-quadrature oracle") {
  // 2-term oracle: iterated closed form over one variable, 48-pt
  // Gauss-Legendre panels over the other (independent of the QMC path).
  auto oracle2 = [](double a1, double a2) {
    // E over X2 of closed-form conditional mean log2(1 + a1 X1 + a2 x2)
    // = E_x2 [ log2(1+a2 x2) + e^{(1+a2 x2)/a1} E1((1+a2 x2)/a1)/ln2 ]
    double total = 0.0;
    const int panels = 40;
    const double t_max = 40.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = t_max * p / panels, hi = t_max * (p + 1) / panels;
      // 8-pt Gauss-Legendre per panel
      static const double xs[4] = {0.1834346424956498, 0.5255324099163290,
                                   0.7966664774136267, 0.9602898564975363};
      static const double ws[4] = {0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (int j = 0; j < 4; ++j) {
        for (double s : {-1.0, 1.0}) {
          const double x2 = mid + s * half * xs[j];
          const double c = 1.0 + a2 * x2;
          const double val = std::log2(c) + marc_test::expx_e1(c / a1) / 0.6931471805599453;
          total += half * ws[j] * std::exp(-x2) * val;
        }
      }
    }
    return total;
  };
  const double cases[][2] = {{1.0, 1.0}, {0.3, 5.0}, {10.0, 0.05}, {2.0, 2.0}};
  for (const auto& c : cases) {
    const double a[] = {c[0], c[1]};
    const double got = rayleigh_sum_log_mean(a, 0, 1 << 16);
    CHECK(got == doctest::Approx(oracle2(c[0], c[1])).epsilon(5e-4));
  }
}

TEST_CASE("qmc expectation is deterministic in the seed") {
  const double a[] = {1.0, 3.0, 0.2};
  const double v1 = rayleigh_sum_log_mean(a, 42, 4096);
  const double v2 = rayleigh_sum_log_mean(a, 42, 4096);
  const double v3 = rayleigh_sum_log_mean(a, 43, 4096);
  CHECK(v1 == v2);
  CHECK(v1 != v3);
  CHECK(v1 == doctest::Approx(v3).epsilon(1e-2));
}
