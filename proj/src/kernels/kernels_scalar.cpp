#include "rdsss/kernels.hpp"

namespace rdsss::kernels::scalar {

WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights) {
  const std::size_t n = values.size();
  double num[4] = {0.0, 0.0, 0.0, 0.0};
  double den[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      num[l] += values[i + l] * weights[i + l];
      den[l] += weights[i + l];
    }
  }
  WeightedSums out;
  out.weighted = (num[0] + num[1]) + (num[2] + num[3]);
  out.weight = (den[0] + den[1]) + (den[2] + den[3]);
  for (; i < n; ++i) {
    out.weighted += values[i] * weights[i];
    out.weight += weights[i];
  }
  return out;
}

double reciprocal_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) acc[l] += 1.0 / x[i + l];
  }
  double total = (acc[0] + acc[1]) + (acc[2] + acc[3]);
  for (; i < n; ++i) total += 1.0 / x[i];
  return total;
}

void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * factors[i];
}

std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < thresholds[i]) out[count++] = base + static_cast<std::uint32_t>(i);
  }
  return count;
}

}  // namespace rdsss::kernels::scalar
