#pragma once

// Successive sampling (probability proportional to size, without replacement).
//
// At each step an unsampled unit i is selected with probability
//   d_i / (2E - sum of sizes already drawn),
// where 2E is the total size. Two simulation routes are provided: a per-unit
// exponential race (draw_ppswor) and a per-class sequential draw used when
// only class counts matter (ClassSampler). Both are checked against the exact
// enumerations below.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdsss/domain.hpp"
#include "rdsss/rng.hpp"

namespace rdsss {

class PopulationSizes {
 public:
  explicit PopulationSizes(std::vector<int> sizes);

  std::span<const int> sizes() const noexcept { return sizes_; }
  std::size_t size() const noexcept { return sizes_.size(); }
  std::int64_t total() const noexcept { return total_; }  // 2E

 private:
  std::vector<int> sizes_;
  std::int64_t total_ = 0;
};

// Ordered successive sample of n distinct unit indices.
std::vector<std::size_t> draw_ppswor(const PopulationSizes& pop, std::size_t n, Rng& rng);

inline constexpr std::size_t kOracleMaxUnits = 12;

// Exact first-order inclusion probabilities by dynamic programming over the
// subsets reachable in fewer than n draws. Limited to kOracleMaxUnits units.
std::vector<double> exact_inclusion(const PopulationSizes& pop, std::size_t n);

inline constexpr std::int64_t kClassOracleMaxStates = 2'000'000;

// Exact per-class inclusion probability E[V_k] / N_k for an integer degree
// distribution, by dynamic programming over class compositions of the sample.
InclusionMap exact_class_inclusion(const DegreeDistribution& dist, std::int64_t n);

// Sequential per-class successive sampler. Class k carries weight
// degree_k * remaining_k, so one draw picks a unit of class k with exactly the
// step-wise probability above; units within a class are exchangeable.
class ClassSampler {
 public:
  ClassSampler(std::span<const int> degrees, std::span<const std::int64_t> counts);

  std::size_t classes() const noexcept { return degrees_.size(); }
  std::int64_t population() const noexcept { return population_; }

  // Draws one sample of size n; taken[k] receives the units drawn from class k.
  void draw(std::int64_t n, Rng& rng, std::span<std::int64_t> taken);

 private:
  std::vector<std::int64_t> degrees_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> weights_;
  std::int64_t population_ = 0;
  std::int64_t total_weight_ = 0;
};

// U_k: units of class k sampled across M replicate successive samples.
std::vector<std::int64_t> simulate_class_totals(std::span<const int> degrees,
                                                std::span<const std::int64_t> counts,
                                                std::int64_t n, std::int64_t trials,
                                                std::uint64_t seed);

// f(k) = (U_k + 1) / (M * N_k + 1) for every class with N_k > 0.
InclusionMap estimate_inclusion_by_class(const DegreeDistribution& dist, std::int64_t n,
                                         std::int64_t trials, std::uint64_t seed);

// Per-unit estimate (U_i + 1) / (M + 1).
std::vector<double> fattorini_unit_probs(const PopulationSizes& pop, std::size_t n,
                                         std::int64_t trials, std::uint64_t seed);

}  // namespace rdsss
