#include "rdsss/classic.hpp"

#include <cmath>
#include <vector>

#include "rdsss/error.hpp"
#include "rdsss/kernels.hpp"

namespace rdsss {
namespace {

void require_nonempty(std::size_t n) {
  if (n == 0) fail(ErrorCode::EmptySample, "estimator needs at least one record");
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::InvalidArgument, "degree and outcome vectors differ in length");
}

}  // namespace

double mu_vh(std::span<const int> degrees, std::span<const double> outcomes) {
  require_same_length(degrees.size(), outcomes.size());
  require_nonempty(degrees.size());
  std::vector<double> weights(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) fail(ErrorCode::InvalidArgument, "VH weights need degrees >= 1");
    weights[i] = 1.0 / degrees[i];
  }
  const auto sums = kernels::weighted_sums(outcomes, weights);
  return sums.weighted / sums.weight;
}

double mu_vh(const RdsSample& sample) {
  const auto d = sample.degrees();
  const auto z = sample.outcomes();
  return mu_vh(d, z);
}

double mu_mean(std::span<const double> outcomes) {
  require_nonempty(outcomes.size());
  const std::vector<double> ones(outcomes.size(), 1.0);
  const auto sums = kernels::weighted_sums(outcomes, ones);
  return sums.weighted / sums.weight;
}

double mu_mean(const RdsSample& sample) {
  const auto z = sample.outcomes();
  return mu_mean(z);
}

double hajek_mean(std::span<const double> outcomes, std::span<const double> inclusion) {
  require_same_length(outcomes.size(), inclusion.size());
  require_nonempty(outcomes.size());
  std::vector<double> weights(inclusion.size());
  for (std::size_t i = 0; i < inclusion.size(); ++i) {
    if (!(inclusion[i] > 0.0)) fail(ErrorCode::ZeroInclusionProbability, "inclusion probability must be > 0");
    weights[i] = 1.0 / inclusion[i];
  }
  const auto sums = kernels::weighted_sums(outcomes, weights);
  return sums.weighted / sums.weight;
}

double activity_ratio(std::span<const int> degrees, std::span<const double> z) {
  require_same_length(degrees.size(), z.size());
  double deg_in = 0.0, cnt_in = 0.0, deg_out = 0.0, cnt_out = 0.0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    deg_in += degrees[i] * z[i];
    cnt_in += z[i];
    deg_out += degrees[i] * (1.0 - z[i]);
    cnt_out += 1.0 - z[i];
  }
  if (cnt_in <= 0.0 || cnt_out <= 0.0)
    fail(ErrorCode::DegenerateGroup, "activity ratio needs both groups to be non-empty");
  if (deg_out <= 0.0)
    fail(ErrorCode::DegenerateGroup, "z=0 group has no ties; activity ratio undefined");
  return (deg_in / cnt_in) * (cnt_out / deg_out);
}

NhatBounds nhat_bounds(std::int64_t population_size, std::int64_t n) {
  if (n > population_size) {
    fail(ErrorCode::SampleExceedsPopulation,
         "n=" + std::to_string(n) + " exceeds N=" + std::to_string(population_size));
  }
  NhatBounds b;
  const double half_gap = static_cast<double>(population_size - n) / 2.0;
  b.small = static_cast<double>(population_size) - half_gap;
  b.large = static_cast<double>(population_size) + half_gap;
  b.small_rounded = static_cast<std::int64_t>(std::floor(b.small + 0.5));
  b.large_rounded = static_cast<std::int64_t>(std::floor(b.large + 0.5));
  return b;
}

}  // namespace rdsss
