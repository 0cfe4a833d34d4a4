#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdsss/domain.hpp"
#include "rdsss/netgen.hpp"
#include "rdsss/rds_sim.hpp"
#include "rdsss/ss_estimator.hpp"

namespace rdsss {

// Population size handed to the SS estimator.
struct AssumedSize {
  enum class Kind { True, NhatSmall, NhatLarge, Explicit };
  Kind kind = Kind::True;
  std::int64_t value = 0;  // Explicit only

  std::string label() const;  // "N", "Nhat_s", "Nhat_l", "N=<value>"
  std::int64_t resolve(std::int64_t true_N, std::int64_t n) const;
};

struct EstimatorSet {
  bool ss = true;
  bool vh = true;
  bool mean = false;
};

struct Scenario {
  std::string id;
  NetParams net;
  RdsDesign design;
  std::vector<AssumedSize> assumed_sizes{AssumedSize{}};
  std::int64_t replicates = 100;
  EstimatorSet estimators;
  SimConfig sim{.trials = 500, .iterations = 3};
};

void validate(const Scenario& scenario);

struct EstimatorSummary {
  std::string label;  // "VH", "MEAN", "SS" or "SS@Nhat_s" etc.
  Method method = Method::MEAN;
  std::string assumed;  // AssumedSize label for SS, empty otherwise
  std::int64_t replicates = 0;
  double mean = 0.0;
  double bias = 0.0;      // mean of (estimate - truth)
  double variance = 0.0;  // population variance of (estimate - truth)
  double mse = 0.0;       // mean of (estimate - truth)^2
  double bias_se = 0.0;   // sample sd of the errors / sqrt(replicates)
  std::vector<double> estimates;
};

struct ScenarioResult {
  Scenario scenario;
  std::vector<double> truths;  // realized population prevalence per replicate
  std::vector<std::int64_t> sample_sizes;
  std::int64_t exhausted = 0;
  std::int64_t reseeds = 0;
  std::vector<EstimatorSummary> estimators;

  const EstimatorSummary& find(const std::string& label) const;
};

struct StudyResult {
  std::uint64_t master_seed = 0;
  std::vector<ScenarioResult> scenarios;
};

// graph -> RDS sample -> every requested estimator on that same sample, for
// each replicate of each scenario. Replicate r of scenario s draws from a
// stream derived from (master, s, r); results are independent of the worker
// count.
StudyResult run_study(const std::vector<Scenario>& scenarios, std::uint64_t master_seed);

EstimatorSummary summarize(std::string label, Method method, std::string assumed,
                           std::vector<double> estimates, const std::vector<double>& truths);

struct CurvePoint {
  int degree = 0;
  std::int64_t n = 0;
  double n_over_N = 0.0;
  double pi = 0.0;
};

struct InclusionCurves {
  std::vector<CurvePoint> successive;    // simulated successive-sampling map
  std::vector<CurvePoint> proportional;  // pi_k = n k / sum_j j N_j (may exceed 1)
};

InclusionCurves inclusion_curves(const DegreeDistribution& dist, const std::vector<std::int64_t>& n_list,
                                 const SimConfig& config);

}  // namespace rdsss
