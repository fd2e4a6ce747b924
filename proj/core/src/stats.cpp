#include "loguse/stats.hpp"

#include <cmath>

#include "loguse/errors.hpp"

namespace loguse::stats {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// chi2(1) is the square of a standard normal, so
// P(X > x) = 2 P(Z > sqrt(x)) = erfc(sqrt(x / 2)).
double chi_squared1_sf(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

TestResult chi_squared_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                           std::uint64_t d) {
  const double row1 = static_cast<double>(a) + static_cast<double>(b);
  const double row2 = static_cast<double>(c) + static_cast<double>(d);
  const double col1 = static_cast<double>(a) + static_cast<double>(c);
  const double col2 = static_cast<double>(b) + static_cast<double>(d);
  if (row1 == 0.0 || row2 == 0.0 || col1 == 0.0 || col2 == 0.0) {
    throw UndefinedMetricError("chi-squared: degenerate 2x2 table");
  }
  const double n = row1 + row2;
  const double diff = static_cast<double>(a) * static_cast<double>(d) -
                      static_cast<double>(b) * static_cast<double>(c);
  const double statistic = n * diff * diff / (row1 * row2 * col1 * col2);
  return {statistic, chi_squared1_sf(statistic), 1, "chi-squared"};
}

TestResult z_test_proportions(std::uint64_t x1, std::uint64_t n1,
                              std::uint64_t x2, std::uint64_t n2) {
  if (n1 == 0 || n2 == 0) {
    throw UndefinedMetricError("z-test: empty sample");
  }
  const double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  const double pooled = (static_cast<double>(x1) + static_cast<double>(x2)) /
                        (static_cast<double>(n1) + static_cast<double>(n2));
  if (pooled <= 0.0 || pooled >= 1.0) {
    throw UndefinedMetricError("z-test: pooled proportion is 0 or 1");
  }
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) +
                               1.0 / static_cast<double>(n2)));
  const double z = (p1 - p2) / se;
  return {z, 2.0 * normal_sf(std::fabs(z)), 0, "two-sample z (proportions)"};
}

TestResult z_test_means(double m1, double s1, std::size_t n1, double m2,
                        double s2, std::size_t n2) {
  if (n1 < 2 || n2 < 2) {
    throw UndefinedMetricError("z-test: needs at least two observations per arm");
  }
  const double se2 = s1 * s1 / static_cast<double>(n1) +
                     s2 * s2 / static_cast<double>(n2);
  if (se2 <= 0.0) {
    throw UndefinedMetricError("z-test: zero combined standard error");
  }
  const double z = (m1 - m2) / std::sqrt(se2);
  return {z, 2.0 * normal_sf(std::fabs(z)), 0, "two-sample z (means)"};
}

}  // namespace loguse::stats
