#include "rdsss/ss_estimator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "rdsss/classic.hpp"
#include "rdsss/error.hpp"
#include "rdsss/ppswor.hpp"
#include "rdsss/rng.hpp"

namespace rdsss {
namespace {

std::int64_t tally_size(const DegreeTally& v) {
  std::int64_t n = 0;
  for (const auto& [k, c] : v) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "observed degrees must be >= 1");
    if (c < 0) fail(ErrorCode::InvalidArgument, "observed counts must be >= 0");
    n += c;
  }
  return n;
}

void require_population(std::int64_t n, std::int64_t population_size) {
  if (population_size < n) {
    fail(ErrorCode::SampleExceedsPopulation, "assumed population size " +
                                                 std::to_string(population_size) +
                                                 " is smaller than the sample size " + std::to_string(n));
  }
}

double max_relative_change(const InclusionMap& before, const InclusionMap& after) {
  double worst = 0.0;
  for (const auto& [k, p] : after.probs) {
    auto it = before.probs.find(k);
    if (it == before.probs.end() || it->second <= 0.0) return INFINITY;
    worst = std::max(worst, std::abs(p - it->second) / it->second);
  }
  return worst;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::SS: return "ss";
    case Method::VH: return "vh";
    case Method::MEAN: return "mean";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "ss" || text == "SS") return Method::SS;
  if (text == "vh" || text == "VH") return Method::VH;
  if (text == "mean" || text == "MEAN") return Method::MEAN;
  fail(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

InclusionMap initial_map(const DegreeTally& v, std::int64_t population_size) {
  const std::int64_t n = tally_size(v);
  if (n < 1) fail(ErrorCode::EmptySample, "initial map needs a non-empty sample");
  require_population(n, population_size);

  double harmonic = 0.0;
  for (const auto& [k, c] : v) harmonic += static_cast<double>(c) / k;

  InclusionMap f;
  f.n = n;
  f.N = static_cast<double>(population_size);
  for (const auto& [k, c] : v) {
    if (c > 0) f.probs[k] = k * harmonic / static_cast<double>(population_size);
  }
  return f;
}

DegreeDistribution update_degree_distribution(const DegreeTally& v, const InclusionMap& f,
                                              std::int64_t population_size) {
  tally_size(v);
  std::vector<DegreeClass> classes;
  double total = 0.0;
  for (const auto& [k, c] : v) {
    if (c == 0) continue;
    auto it = f.probs.find(k);
    if (it == f.probs.end() || !(it->second > 0.0)) {
      fail(ErrorCode::ZeroInclusionProbability,
           "inclusion probability for observed degree " + std::to_string(k) + " is zero or missing");
    }
    const double expanded = static_cast<double>(c) / it->second;
    classes.push_back({k, expanded});
    total += expanded;
  }
  for (DegreeClass& c : classes) c.count = static_cast<double>(population_size) * c.count / total;
  return DegreeDistribution(std::move(classes));
}

DegreeDistribution round_population(const DegreeDistribution& nhat, const DegreeTally& v,
                                    std::int64_t population_size) {
  const auto& classes = nhat.classes();
  const std::size_t count = classes.size();
  std::vector<std::int64_t> base(count);
  std::vector<std::int64_t> floor_obs(count);
  std::int64_t assigned = 0;
  for (std::size_t k = 0; k < count; ++k) {
    auto it = v.find(classes[k].degree);
    floor_obs[k] = it == v.end() ? 0 : it->second;
    base[k] = std::max(static_cast<std::int64_t>(std::floor(classes[k].count)), floor_obs[k]);
    assigned += base[k];
  }
  if (std::accumulate(floor_obs.begin(), floor_obs.end(), std::int64_t{0}) > population_size)
    fail(ErrorCode::SampleExceedsPopulation, "observed sample larger than population");

  // Shortfall: hand out units by largest remainder N_k - base_k (ties go to
  // the lower degree). Excess: take from the classes furthest above target
  // that still have room over v_k.
  while (assigned < population_size) {
    std::size_t best = 0;
    double best_gap = -INFINITY;
    for (std::size_t k = 0; k < count; ++k) {
      const double gap = classes[k].count - static_cast<double>(base[k]);
      if (gap > best_gap) {
        best_gap = gap;
        best = k;
      }
    }
    ++base[best];
    ++assigned;
  }
  while (assigned > population_size) {
    std::size_t best = count;
    double best_excess = -INFINITY;
    for (std::size_t k = 0; k < count; ++k) {
      if (base[k] <= floor_obs[k]) continue;
      const double excess = static_cast<double>(base[k]) - classes[k].count;
      if (excess > best_excess) {
        best_excess = excess;
        best = k;
      }
    }
    --base[best];
    --assigned;
  }

  std::vector<DegreeClass> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back({classes[k].degree, static_cast<double>(base[k])});
  return DegreeDistribution(std::move(out));
}

InclusionMap isotonic_nondecreasing(const InclusionMap& f, const DegreeDistribution& population) {
  struct Block {
    double value;
    double weight;
    std::size_t size;
  };
  std::vector<Block> blocks;
  std::vector<int> degrees;
  for (const auto& [k, p] : f.probs) {
    double w = population.count(k);
    if (w <= 0.0) w = 1.0;
    degrees.push_back(k);
    blocks.push_back({p, w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].value > blocks.back().value) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w_sum = prev.weight + top.weight;
      prev.value = (prev.value * prev.weight + top.value * top.weight) / w_sum;
      prev.weight = w_sum;
      prev.size += top.size;
    }
  }
  InclusionMap out = f;
  std::size_t idx = 0;
  for (const Block& b : blocks)
    for (std::size_t j = 0; j < b.size; ++j) out.probs[degrees[idx++]] = b.value;
  return out;
}

SsFit fit_ss(const DegreeTally& v, std::int64_t population_size, const SimConfig& config,
             const InclusionOracle& oracle) {
  validate(config);
  const std::int64_t n = tally_size(v);
  if (n < 1) fail(ErrorCode::EmptySample, "SS fit needs a non-empty sample");
  require_population(n, population_size);

  SsFit fit;
  for (const auto& [k, c] : v) {
    if (c > 0 && static_cast<double>(k) * k >= static_cast<double>(population_size)) {
      fit.warnings.push_back("observed degree " + std::to_string(k) +
                             " >= sqrt(N); loops and multi-edges are not negligible");
      break;
    }
  }

  if (population_size == n) {
    // Census: the moment equations force N_k = v_k and f = 1.
    fit.nhat = DegreeDistribution::from_tally(v);
    fit.inclusion.n = n;
    fit.inclusion.N = static_cast<double>(population_size);
    for (const auto& [k, c] : v)
      if (c > 0) fit.inclusion.probs[k] = 1.0;
    fit.implied_population = static_cast<double>(n);
    return fit;
  }

  InclusionMap f = initial_map(v, population_size);
  for (std::int64_t iter = 1; iter <= config.iterations; ++iter) {
    fit.nhat = update_degree_distribution(v, f, population_size);
    const DegreeDistribution drawable = round_population(fit.nhat, v, population_size);
    InclusionMap next =
        oracle ? oracle(drawable, n)
               : estimate_inclusion_by_class(drawable, n, config.trials,
                                             derive_seed(config.rng_seed, {static_cast<std::uint64_t>(iter)}));
    if (config.isotonic) next = isotonic_nondecreasing(next, drawable);
    next.n = n;
    next.N = static_cast<double>(population_size);
    const double change = max_relative_change(f, next);
    f = std::move(next);
    fit.iterations_run = iter;
    if (config.convergence_tol > 0.0 && change < config.convergence_tol) break;
  }
  fit.inclusion = std::move(f);

  double residual = 0.0;
  double implied = 0.0;
  for (const auto& [k, c] : v) {
    if (c == 0) continue;
    const double p = fit.inclusion.at(k);
    residual += std::abs(fit.nhat.count(k) * p - static_cast<double>(c));
    implied += static_cast<double>(c) / p;
  }
  fit.moment_residual = residual / static_cast<double>(n);
  fit.implied_population = implied;
  return fit;
}

SsFit fit_ss(const RdsSample& sample, std::int64_t population_size, const SimConfig& config) {
  if (sample.empty()) fail(ErrorCode::EmptySample, "SS fit needs a non-empty sample");
  return fit_ss(degree_counts(sample), population_size, config);
}

Estimate mu_ss(const RdsSample& sample, std::int64_t population_size, const SimConfig& config) {
  Estimate est;
  est.method = Method::SS;
  est.assumed_N = population_size;
  est.config = config;
  est.fit = fit_ss(sample, population_size, config);

  std::vector<double> pi;
  pi.reserve(sample.size());
  for (const RdsRecord& r : sample.records) pi.push_back(est.fit->inclusion.at(r.degree));
  const auto z = sample.outcomes();
  est.value = hajek_mean(z, pi);
  return est;
}

Estimate estimate(const RdsSample& sample, Method method,
                  std::optional<std::int64_t> population_size, const SimConfig& config) {
  switch (method) {
    case Method::SS:
      if (!population_size)
        fail(ErrorCode::MissingPopulationSize, "the SS estimator needs a population size");
      return mu_ss(sample, *population_size, config);
    case Method::VH: {
      Estimate est;
      est.method = method;
      est.assumed_N = population_size;
      est.config = config;
      est.value = mu_vh(sample);
      return est;
    }
    case Method::MEAN: {
      Estimate est;
      est.method = method;
      est.assumed_N = population_size;
      est.config = config;
      est.value = mu_mean(sample);
      return est;
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown method");
}

std::vector<SensitivityPoint> sensitivity_sweep(const RdsSample& sample,
                                                const std::vector<std::int64_t>& grid,
                                                const SimConfig& config) {
  const auto n = static_cast<std::int64_t>(sample.size());
  for (std::int64_t N : grid) require_population(n, N);
  std::vector<SensitivityPoint> out;
  out.reserve(grid.size());
  for (std::int64_t N : grid) out.push_back({N, mu_ss(sample, N, config)});
  return out;
}

std::vector<std::int64_t> parse_grid(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) fail(ErrorCode::InvalidArgument, "grid must look like min:max:points");

  auto parse = [&](std::string_view s) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      fail(ErrorCode::InvalidArgument, "bad grid component '" + std::string(s) + "'");
    return value;
  };
  const std::int64_t lo = parse(parts[0]);
  const std::int64_t hi = parse(parts[1]);
  const std::int64_t points = parse(parts[2]);
  if (points < 1 || hi < lo || lo < 1)
    fail(ErrorCode::InvalidArgument, "grid needs 1 <= min <= max and points >= 1");

  std::vector<std::int64_t> grid;
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (std::int64_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const auto value = static_cast<std::int64_t>(std::llround(static_cast<double>(lo) + t * static_cast<double>(hi - lo)));
    if (grid.empty() || grid.back() != value) grid.push_back(value);
  }
  return grid;
}

}  // namespace rdsss
