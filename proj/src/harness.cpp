#include "rdsss/harness.hpp"

#include <cmath>

#include "rdsss/classic.hpp"
#include "rdsss/error.hpp"
#include "rdsss/parallel.hpp"
#include "rdsss/ppswor.hpp"
#include "rdsss/rng.hpp"

namespace rdsss {

std::string AssumedSize::label() const {
  switch (kind) {
    case Kind::True: return "N";
    case Kind::NhatSmall: return "Nhat_s";
    case Kind::NhatLarge: return "Nhat_l";
    case Kind::Explicit: return "N=" + std::to_string(value);
  }
  return "?";
}

std::int64_t AssumedSize::resolve(std::int64_t true_N, std::int64_t n) const {
  switch (kind) {
    case Kind::True: return true_N;
    case Kind::NhatSmall: return nhat_bounds(true_N, n).small_rounded;
    case Kind::NhatLarge: return nhat_bounds(true_N, n).large_rounded;
    case Kind::Explicit: return value;
  }
  return true_N;
}

void validate(const Scenario& scenario) {
  if (scenario.replicates < 1) fail(ErrorCode::InvalidArgument, "scenario '" + scenario.id + "': replicates must be >= 1");
  validate(scenario.design);
  validate(scenario.sim);
  if (scenario.design.target_n > scenario.net.N)
    fail(ErrorCode::SampleExceedsPopulation, "scenario '" + scenario.id + "': target_n exceeds N");
  if (!scenario.estimators.ss && !scenario.estimators.vh && !scenario.estimators.mean)
    fail(ErrorCode::InvalidArgument, "scenario '" + scenario.id + "': no estimators requested");
  try {
    solve_mixing_probs(scenario.net);
  } catch (const Error& e) {
    throw Error(e.code(), "scenario '" + scenario.id + "': " + e.what());
  }
}

const EstimatorSummary& ScenarioResult::find(const std::string& label) const {
  for (const auto& e : estimators)
    if (e.label == label) return e;
  fail(ErrorCode::InvalidArgument, "no estimator '" + label + "' in scenario '" + scenario.id + "'");
}

EstimatorSummary summarize(std::string label, Method method, std::string assumed,
                           std::vector<double> estimates, const std::vector<double>& truths) {
  EstimatorSummary s;
  s.label = std::move(label);
  s.method = method;
  s.assumed = std::move(assumed);
  s.replicates = static_cast<std::int64_t>(estimates.size());
  const double count = static_cast<double>(estimates.size());
  double sum = 0.0, err_sum = 0.0, sq_sum = 0.0;
  for (std::size_t r = 0; r < estimates.size(); ++r) {
    const double err = estimates[r] - truths[r];
    sum += estimates[r];
    err_sum += err;
    sq_sum += err * err;
  }
  s.mean = sum / count;
  s.bias = err_sum / count;
  s.mse = sq_sum / count;
  double centered = 0.0;
  for (std::size_t r = 0; r < estimates.size(); ++r) {
    const double dev = estimates[r] - truths[r] - s.bias;
    centered += dev * dev;
  }
  s.variance = centered / count;
  s.bias_se = estimates.size() > 1 ? std::sqrt(centered / (count - 1.0) / count) : 0.0;
  s.estimates = std::move(estimates);
  return s;
}

StudyResult run_study(const std::vector<Scenario>& scenarios, std::uint64_t master_seed) {
  for (const Scenario& s : scenarios) validate(s);

  StudyResult result;
  result.master_seed = master_seed;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const Scenario& sc = scenarios[si];
    const auto reps = static_cast<std::size_t>(sc.replicates);
    const MixingProbs probs = solve_mixing_probs(sc.net);
    const std::int64_t infected = sc.net.infected();

    std::vector<double> truths(reps);
    std::vector<std::int64_t> sizes(reps);
    std::vector<std::uint8_t> exhausted(reps, 0);
    std::vector<std::int64_t> reseeds(reps, 0);
    std::vector<double> vh(reps), mean(reps);
    std::vector<std::vector<double>> ss(sc.assumed_sizes.size(), std::vector<double>(reps));

    parallel_for(reps, [&](std::size_t r) {
      Rng rng = make_stream(master_seed, {si, r});
      const Graph g = sample_mixing_graph(sc.net.N, infected, probs, rng);
      const RdsRun run = run_rds(g, sc.design, rng);
      const RdsSample& sample = run.sample;

      truths[r] = static_cast<double>(infected) / static_cast<double>(sc.net.N);
      sizes[r] = static_cast<std::int64_t>(sample.size());
      exhausted[r] = sample.exhausted ? 1 : 0;
      reseeds[r] = run.reseeds;
      if (sc.estimators.vh) vh[r] = mu_vh(sample);
      if (sc.estimators.mean) mean[r] = mu_mean(sample);
      if (sc.estimators.ss) {
        // One seed per replicate shared by every assumed size.
        SimConfig cfg = sc.sim;
        cfg.rng_seed = derive_seed(master_seed, {si, r, 0x55});
        for (std::size_t a = 0; a < sc.assumed_sizes.size(); ++a) {
          const std::int64_t assumed = sc.assumed_sizes[a].resolve(sc.net.N, sizes[r]);
          ss[a][r] = mu_ss(sample, assumed, cfg).value;
        }
      }
    });

    ScenarioResult sr;
    sr.scenario = sc;
    sr.truths = truths;
    sr.sample_sizes = sizes;
    for (std::size_t r = 0; r < reps; ++r) {
      sr.exhausted += exhausted[r];
      sr.reseeds += reseeds[r];
    }
    if (sc.estimators.ss) {
      for (std::size_t a = 0; a < sc.assumed_sizes.size(); ++a) {
        const AssumedSize& as = sc.assumed_sizes[a];
        const std::string label = as.kind == AssumedSize::Kind::True ? "SS" : "SS@" + as.label();
        sr.estimators.push_back(summarize(label, Method::SS, as.label(), std::move(ss[a]), truths));
      }
    }
    if (sc.estimators.vh) sr.estimators.push_back(summarize("VH", Method::VH, "", std::move(vh), truths));
    if (sc.estimators.mean) sr.estimators.push_back(summarize("MEAN", Method::MEAN, "", std::move(mean), truths));
    result.scenarios.push_back(std::move(sr));
  }
  return result;
}

InclusionCurves inclusion_curves(const DegreeDistribution& dist, const std::vector<std::int64_t>& n_list,
                                 const SimConfig& config) {
  validate(config);
  if (!dist.integral()) fail(ErrorCode::InvalidArgument, "curves need an integer degree distribution");
  const double N = dist.total();
  const double stubs = dist.stub_total();

  InclusionCurves out;
  for (std::int64_t n : n_list) {
    if (static_cast<double>(n) > N)
      fail(ErrorCode::SampleExceedsPopulation, "curve sample size " + std::to_string(n) + " exceeds N");
    if (n < 1) fail(ErrorCode::InvalidArgument, "curve sample sizes must be >= 1");
    const double frac = static_cast<double>(n) / N;

    InclusionMap map;
    if (static_cast<double>(n) == N) {
      for (const DegreeClass& c : dist.classes())
        if (c.count > 0.0) map.probs[c.degree] = 1.0;
    } else {
      map = estimate_inclusion_by_class(dist, n, config.trials,
                                        derive_seed(config.rng_seed, {static_cast<std::uint64_t>(n)}));
    }
    for (const auto& [k, p] : map.probs) out.successive.push_back({k, n, frac, p});
    for (const DegreeClass& c : dist.classes()) {
      if (c.count <= 0.0) continue;
      out.proportional.push_back({c.degree, n, frac, static_cast<double>(n) * c.degree / stubs});
    }
  }
  return out;
}

}  // namespace rdsss
