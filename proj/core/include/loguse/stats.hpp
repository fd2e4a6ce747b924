#pragma once

#include <cstdint>
#include <string>

namespace loguse::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int df = 0;  // chi-squared only
  std::string method;
};

// Upper-tail survival functions.
double normal_sf(double z);        // P(Z > z), standard normal
double chi_squared1_sf(double x);  // P(X > x), chi-squared with 1 df

// Pearson chi-squared on the 2x2 table ((a, b), (c, d)), no continuity
// correction, df = 1. Throws UndefinedMetricError when a row or column
// sum is zero.
TestResult chi_squared_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                           std::uint64_t d);

// Two-sample z-test for proportions x1/n1 vs x2/n2, pooled variance,
// two-sided p. For a 2x2 table, z^2 equals the chi-squared statistic.
// Throws UndefinedMetricError when the pooled proportion is 0 or 1.
TestResult z_test_proportions(std::uint64_t x1, std::uint64_t n1,
                              std::uint64_t x2, std::uint64_t n2);

// Two-sample z-test for means with unpooled (Welch-style) variance,
// two-sided p. s1, s2 are sample standard deviations. Throws
// UndefinedMetricError when the combined standard error is zero or a
// sample has fewer than two observations.
TestResult z_test_means(double m1, double s1, std::size_t n1, double m2,
                        double s2, std::size_t n2);

}  // namespace loguse::stats
