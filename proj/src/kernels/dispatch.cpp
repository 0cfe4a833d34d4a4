#include <atomic>
#include <cstdlib>
#include <cstring>

#include "rdsss/error.hpp"
#include "rdsss/kernels.hpp"

namespace rdsss::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(RDSSS_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("RDS_SS_SIMD"); env != nullptr && std::strcmp(env, "scalar") == 0)
    return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) fail(ErrorCode::InvalidArgument, "instruction set not available on this CPU");
  current().store(isa);
}

#if defined(RDSSS_HAVE_AVX2)
#define RDSSS_DISPATCH(fn, ...) \
  (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define RDSSS_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

WeightedSums weighted_sums(std::span<const double> values, std::span<const double> weights) {
  return RDSSS_DISPATCH(weighted_sums, values, weights);
}

double reciprocal_sum(std::span<const double> x) { return RDSSS_DISPATCH(reciprocal_sum, x); }

void scale(std::span<const double> x, std::span<const double> factors, std::span<double> out) {
  RDSSS_DISPATCH(scale, x, factors, out);
}

std::size_t select_below(std::span<const double> u, std::span<const double> thresholds,
                         std::uint32_t base, std::span<std::uint32_t> out) {
  return RDSSS_DISPATCH(select_below, u, thresholds, base, out);
}

#undef RDSSS_DISPATCH

}  // namespace rdsss::kernels
