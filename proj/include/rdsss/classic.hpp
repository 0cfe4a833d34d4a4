#pragma once

#include <cstdint>
#include <span>

#include "rdsss/domain.hpp"

namespace rdsss {

// Volz-Heckathorn: Hajek estimator with weights 1/d_i.
double mu_vh(std::span<const int> degrees, std::span<const double> outcomes);
double mu_vh(const RdsSample& sample);

double mu_mean(std::span<const double> outcomes);
double mu_mean(const RdsSample& sample);

// Generalized Horvitz-Thompson (Hajek) mean with per-unit inclusion
// probabilities; shared by the SS estimator.
double hajek_mean(std::span<const double> outcomes, std::span<const double> inclusion);

// Mean degree of z=1 units over mean degree of z=0 units. Intended for
// simulated populations where the truth is known.
double activity_ratio(std::span<const int> degrees, std::span<const double> z);

struct NhatBounds {
  double small = 0.0;  // N - (N - n) / 2
  double large = 0.0;  // N + (N - n) / 2
  std::int64_t small_rounded = 0;
  std::int64_t large_rounded = 0;
};

// Rounded values use round-half-up.
NhatBounds nhat_bounds(std::int64_t population_size, std::int64_t n);

struct ScenarioDescriptors {
  double activity_ratio = 0.0;
  double homophily = 0.0;  // +inf when there are no infected-uninfected ties
  bool homophily_infinite = false;
  double prevalence = 0.0;
  double mean_degree = 0.0;
};

}  // namespace rdsss
