#pragma once

#include <cstddef>
#include <span>

namespace mcplan::stats {

struct Interval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Mean with a 95% normal-approximation interval.
Interval mean_ci(std::span<const double> values);

/// Success proportion with a 95% normal-approximation interval clamped to
/// [0, 1].
Interval proportion_ci(std::size_t successes, std::size_t trials);

double normal_cdf(double z);

struct ZTest {
  double z = 0.0;
  /// One-sided p-value for H1: p1 > p2.
  double p_value = 1.0;
};

/// Pooled two-proportion z-test. A zero pooled variance yields z = 0, p = 1.
ZTest two_proportion_z_test(std::size_t successes1, std::size_t trials1,
                            std::size_t successes2, std::size_t trials2);

}  // namespace mcplan::stats
