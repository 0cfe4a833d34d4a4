#include <immintrin.h>

#include "rdsss/kernels.hpp"

namespace rdsss::kernels::avx2 {

WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights) {
  const std::size_t n = values.size();
  __m256d num = _mm256_setzero_pd();
  __m256d den = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(values.data() + i);
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    num = _mm256_add_pd(num, _mm256_mul_pd(v, w));
    den = _mm256_add_pd(den, w);
  }
  alignas(32) double nl[4];
  alignas(32) double dl[4];
  _mm256_store_pd(nl, num);
  _mm256_store_pd(dl, den);
  WeightedSums out;
  out.weighted = (nl[0] + nl[1]) + (nl[2] + nl[3]);
  out.weight = (dl[0] + dl[1]) + (dl[2] + dl[3]);
  for (; i < n; ++i) {
    out.weighted += values[i] * weights[i];
    out.weight += weights[i];
  }
  return out;
}

double reciprocal_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_loadu_pd(x.data() + i)));
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  double total = (l[0] + l[1]) + (l[2] + l[3]);
  for (; i < n; ++i) total += 1.0 / x[i];
  return total;
}

void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x.data() + i);
    const __m256d b = _mm256_loadu_pd(factors.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(a, b));
  }
  for (; i < n; ++i) out[i] = x[i] * factors[i];
}

std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out) {
  const std::size_t n = u.size();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(u.data() + i);
    const __m256d t = _mm256_loadu_pd(thresholds.data() + i);
    unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(a, t, _CMP_LT_OQ)));
    while (mask != 0) {
      const unsigned lane = static_cast<unsigned>(__builtin_ctz(mask));
      out[count++] = base + static_cast<std::uint32_t>(i + lane);
      mask &= mask - 1;
    }
  }
  for (; i < n; ++i) {
    if (u[i] < thresholds[i]) out[count++] = base + static_cast<std::uint32_t>(i);
  }
  return count;
}

}  // namespace rdsss::kernels::avx2
