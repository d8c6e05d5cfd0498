#include "mcplan/stats.hpp"

#include <algorithm>
#include <cmath>

namespace mcplan::stats {

Interval mean_ci(std::span<const double> values) {
  Interval out;
  out.count = values.size();
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double half = 0.0;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    half = kZ95 * sd / std::sqrt(static_cast<double>(values.size()));
  }
  out.lower = out.mean - half;
  out.upper = out.mean + half;
  return out;
}

Interval proportion_ci(std::size_t successes, std::size_t trials) {
  Interval out;
  out.count = trials;
  if (trials == 0) return out;
  const auto n = static_cast<double>(trials);
  out.mean = static_cast<double>(successes) / n;
  const double half = kZ95 * std::sqrt(out.mean * (1.0 - out.mean) / n);
  out.lower = std::max(0.0, out.mean - half);
  out.upper = std::min(1.0, out.mean + half);
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

ZTest two_proportion_z_test(std::size_t successes1, std::size_t trials1,
                            std::size_t successes2, std::size_t trials2) {
  ZTest out;
  if (trials1 == 0 || trials2 == 0) return out;
  const auto n1 = static_cast<double>(trials1);
  const auto n2 = static_cast<double>(trials2);
  const double p1 = static_cast<double>(successes1) / n1;
  const double p2 = static_cast<double>(successes2) / n2;
  const double pooled =
      static_cast<double>(successes1 + successes2) / (n1 + n2);
  const double variance = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2);
  if (variance <= 0.0) return out;
  out.z = (p1 - p2) / std::sqrt(variance);
  out.p_value = 1.0 - normal_cdf(out.z);
  return out;
}

}  // namespace mcplan::stats
