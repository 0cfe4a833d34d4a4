#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on x86-64,
// an AVX2 variant picked at runtime. Both variants produce bit-identical output:
// the scalar reductions accumulate in the same four-lane order the vector code
// uses, and neither variant contracts multiply-adds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace rdsss::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct WeightedSums {
  double weighted = 0.0;  // sum of values[i] * weights[i]
  double weight = 0.0;    // sum of weights[i]
};

// Hajek numerator and denominator.
WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights);

// Sum of 1 / x[i]; used for harmonic-mean style normalizers.
double reciprocal_sum(std::span<const double> x);

// out[i] = x[i] * factors[i]
void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out);

// Writes the indices i (offset by `base`) with u[i] < thresholds[i] to `out`
// in increasing order and returns how many were written. `out` must hold at
// least u.size() entries.
std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out);

// Runtime dispatch. `RDS_SS_SIMD=scalar` in the environment forces the scalar
// path at startup.
Isa active_isa();
bool isa_supported(Isa isa);
void force_isa(Isa isa);  // throws InvalidArgument if unsupported

namespace scalar {
WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights);
double reciprocal_sum(std::span<const double> x);
void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out);
std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out);
}  // namespace scalar

#if defined(RDSSS_HAVE_AVX2)
namespace avx2 {
WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights);
double reciprocal_sum(std::span<const double> x);
void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out);
std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out);
}  // namespace avx2
#endif

}  // namespace rdsss::kernels
