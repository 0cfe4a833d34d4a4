#pragma once

// Successive-sampling estimator.
//
// The population degree distribution and the degree -> inclusion map are
// estimated jointly from the observed degree tally v and an assumed
// population size N, by alternating
//   N_k = N * (v_k / f(k)) / sum_l (v_l / f(l))
// with a simulated successive-sampling inclusion map for the (rounded)
// distribution N_k. The final map weights a Hajek mean.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdsss/domain.hpp"

namespace rdsss {

struct SsFit {
  DegreeDistribution nhat;  // real-valued N_k over observed degrees
  InclusionMap inclusion;
  std::int64_t iterations_run = 0;
  // sum_k |N_k f(k) - v_k| / n
  double moment_residual = 0.0;
  // sum_k v_k / f(k); close to N when the moment equations hold
  double implied_population = 0.0;
  std::vector<std::string> warnings;
};

enum class Method { SS, VH, MEAN };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

struct Estimate {
  double value = 0.0;
  Method method = Method::MEAN;
  std::optional<std::int64_t> assumed_N;
  SimConfig config;
  std::optional<SsFit> fit;  // SS only
};

// Step 1 map, proportional to degree and normalized so sum_l v_l / f(l) = N.
// Values above 1 are allowed here.
InclusionMap initial_map(const DegreeTally& v, std::int64_t population_size);

DegreeDistribution update_degree_distribution(const DegreeTally& v, const InclusionMap& f,
                                              std::int64_t population_size);

// Largest-remainder rounding of a real-valued distribution to integers summing
// to N, with the constraint N_k >= v_k so the observed sample is drawable.
DegreeDistribution round_population(const DegreeDistribution& nhat, const DegreeTally& v,
                                    std::int64_t population_size);

// Weighted pool-adjacent-violators fit, non-decreasing in degree. Weights are
// the class counts of `population`.
InclusionMap isotonic_nondecreasing(const InclusionMap& f, const DegreeDistribution& population);

// Replaces the Monte-Carlo inclusion step, e.g. with an exact enumeration.
using InclusionOracle = std::function<InclusionMap(const DegreeDistribution&, std::int64_t)>;

SsFit fit_ss(const DegreeTally& v, std::int64_t population_size, const SimConfig& config,
             const InclusionOracle& oracle = {});
SsFit fit_ss(const RdsSample& sample, std::int64_t population_size, const SimConfig& config);

Estimate mu_ss(const RdsSample& sample, std::int64_t population_size, const SimConfig& config);

// Dispatches on method; SS requires a population size (MissingPopulationSize).
Estimate estimate(const RdsSample& sample, Method method,
                  std::optional<std::int64_t> population_size, const SimConfig& config);

struct SensitivityPoint {
  std::int64_t population_size = 0;
  Estimate estimate;
};

std::vector<SensitivityPoint> sensitivity_sweep(const RdsSample& sample,
                                                const std::vector<std::int64_t>& grid,
                                                const SimConfig& config);

// Parses "min:max:points" into an evenly spaced integer grid (duplicates
// removed after rounding).
std::vector<std::int64_t> parse_grid(std::string_view spec);

}  // namespace rdsss
