#include "rdsss/ppswor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "rdsss/error.hpp"
#include "rdsss/kernels.hpp"
#include "rdsss/parallel.hpp"

namespace rdsss {
namespace {

void require_sample_fits(std::int64_t n, std::int64_t population) {
  if (n > population) {
    fail(ErrorCode::SampleExceedsPopulation,
         "n=" + std::to_string(n) + " exceeds population size " + std::to_string(population));
  }
  if (n < 0) fail(ErrorCode::InvalidArgument, "sample size must be non-negative");
}

std::int64_t block_count(std::int64_t trials) {
  return (trials + kReplicateBlock - 1) / kReplicateBlock;
}

}  // namespace

PopulationSizes::PopulationSizes(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  for (int s : sizes_) {
    if (s < 1) fail(ErrorCode::InvalidArgument, "unit sizes must be >= 1");
    total_ += s;
  }
}

std::vector<std::size_t> draw_ppswor(const PopulationSizes& pop, std::size_t n, Rng& rng) {
  const std::size_t units = pop.size();
  require_sample_fits(static_cast<std::int64_t>(n), static_cast<std::int64_t>(units));

  // Exponential race: unit i arrives at time E_i / d_i. Memorylessness makes
  // the arrival order a successive sample.
  std::vector<double> arrival(units);
  std::vector<double> inv_size(units);
  std::exponential_distribution<double> exp1(1.0);
  for (std::size_t i = 0; i < units; ++i) {
    arrival[i] = exp1(rng);
    inv_size[i] = 1.0 / pop.sizes()[i];
  }
  kernels::scale(arrival, inv_size, arrival);

  std::vector<std::size_t> order(units);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return arrival[a] < arrival[b] || (arrival[a] == arrival[b] && a < b);
                    });
  order.resize(n);
  return order;
}

std::vector<double> exact_inclusion(const PopulationSizes& pop, std::size_t n) {
  const std::size_t units = pop.size();
  if (units > kOracleMaxUnits) {
    fail(ErrorCode::OracleLimitExceeded, "exact enumeration supports at most " +
                                             std::to_string(kOracleMaxUnits) + " units, got " +
                                             std::to_string(units));
  }
  require_sample_fits(static_cast<std::int64_t>(n), static_cast<std::int64_t>(units));

  const auto sizes = pop.sizes();
  const std::size_t states = std::size_t{1} << units;
  std::vector<double> reach(states, 0.0);
  std::vector<std::int64_t> drawn_size(states, 0);
  reach[0] = 1.0;
  std::vector<double> pi(units, 0.0);

  // Supersets always have larger masks, so one increasing pass settles every
  // state before it is expanded.
  for (std::size_t mask = 0; mask < states; ++mask) {
    if (reach[mask] == 0.0) continue;
    const auto taken = static_cast<std::size_t>(std::popcount(mask));
    if (taken == n) {
      for (std::size_t i = 0; i < units; ++i)
        if (mask & (std::size_t{1} << i)) pi[i] += reach[mask];
      continue;
    }
    const double remaining = static_cast<double>(pop.total() - drawn_size[mask]);
    for (std::size_t i = 0; i < units; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if (mask & bit) continue;
      reach[mask | bit] += reach[mask] * sizes[i] / remaining;
      drawn_size[mask | bit] = drawn_size[mask] + sizes[i];
    }
  }
  return pi;
}

InclusionMap exact_class_inclusion(const DegreeDistribution& dist, std::int64_t n) {
  if (!dist.integral()) fail(ErrorCode::InvalidArgument, "exact class oracle needs integer counts");
  const auto total_units = static_cast<std::int64_t>(dist.total());
  require_sample_fits(n, total_units);

  std::vector<std::int64_t> degree;
  std::vector<std::int64_t> count;
  for (const DegreeClass& c : dist.classes()) {
    if (c.count <= 0.0) continue;
    degree.push_back(c.degree);
    count.push_back(static_cast<std::int64_t>(c.count));
  }
  const std::size_t classes = degree.size();

  // Mixed-radix encoding of (taken_0, ..., taken_{K-1}).
  std::vector<std::int64_t> radix(classes);
  std::int64_t states = 1;
  for (std::size_t k = 0; k < classes; ++k) {
    radix[k] = states;
    states *= count[k] + 1;
    if (states > kClassOracleMaxStates)
      fail(ErrorCode::OracleLimitExceeded, "class composition space too large for exact oracle");
  }

  const std::int64_t stubs = static_cast<std::int64_t>(dist.stub_total());
  std::vector<double> reach(static_cast<std::size_t>(states), 0.0);
  reach[0] = 1.0;
  std::vector<double> expected(classes, 0.0);
  std::vector<std::int64_t> taken(classes, 0);

  for (std::int64_t s = 0; s < states; ++s) {
    // Decode; cheap relative to the transitions.
    std::int64_t rest = s;
    std::int64_t level = 0;
    std::int64_t used = 0;
    for (std::size_t k = classes; k-- > 0;) {
      taken[k] = rest / radix[k];
      rest %= radix[k];
      level += taken[k];
      used += taken[k] * degree[k];
    }
    const double p = reach[static_cast<std::size_t>(s)];
    if (p == 0.0 || level > n) continue;
    if (level == n) {
      for (std::size_t k = 0; k < classes; ++k) expected[k] += p * static_cast<double>(taken[k]);
      continue;
    }
    const double remaining = static_cast<double>(stubs - used);
    for (std::size_t k = 0; k < classes; ++k) {
      const std::int64_t left = count[k] - taken[k];
      if (left == 0) continue;
      reach[static_cast<std::size_t>(s + radix[k])] +=
          p * static_cast<double>(degree[k] * left) / remaining;
    }
  }

  InclusionMap out;
  out.n = n;
  out.N = static_cast<double>(total_units);
  for (std::size_t k = 0; k < classes; ++k)
    out.probs[static_cast<int>(degree[k])] = expected[k] / static_cast<double>(count[k]);
  return out;
}

ClassSampler::ClassSampler(std::span<const int> degrees, std::span<const std::int64_t> counts) {
  if (degrees.size() != counts.size())
    fail(ErrorCode::InvalidArgument, "degree and count vectors differ in length");
  degrees_.reserve(degrees.size());
  counts_.reserve(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (degrees[k] < 1) fail(ErrorCode::InvalidArgument, "class degrees must be >= 1");
    if (counts[k] < 0) fail(ErrorCode::InvalidArgument, "class counts must be >= 0");
    degrees_.push_back(degrees[k]);
    counts_.push_back(counts[k]);
    population_ += counts[k];
  }
  weights_.resize(degrees_.size());
}

void ClassSampler::draw(std::int64_t n, Rng& rng, std::span<std::int64_t> taken) {
  require_sample_fits(n, population_);
  const std::size_t classes = degrees_.size();
  total_weight_ = 0;
  for (std::size_t k = 0; k < classes; ++k) {
    weights_[k] = degrees_[k] * counts_[k];
    total_weight_ += weights_[k];
    taken[k] = 0;
  }
  for (std::int64_t step = 0; step < n; ++step) {
    std::uniform_int_distribution<std::int64_t> pick(0, total_weight_ - 1);
    std::int64_t u = pick(rng);
    std::size_t k = 0;
    while (u >= weights_[k]) {
      u -= weights_[k];
      ++k;
    }
    ++taken[k];
    weights_[k] -= degrees_[k];
    total_weight_ -= degrees_[k];
  }
}

std::vector<std::int64_t> simulate_class_totals(std::span<const int> degrees,
                                                std::span<const std::int64_t> counts,
                                                std::int64_t n, std::int64_t trials,
                                                std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  const ClassSampler prototype(degrees, counts);
  require_sample_fits(n, prototype.population());

  const std::size_t classes = prototype.classes();
  const auto blocks = static_cast<std::size_t>(block_count(trials));
  std::vector<std::vector<std::int64_t>> block_totals(blocks, std::vector<std::int64_t>(classes, 0));

  parallel_for(blocks, [&](std::size_t b) {
    ClassSampler sampler = prototype;
    Rng rng = make_stream(seed, {b});
    std::vector<std::int64_t> taken(classes);
    const std::int64_t begin = static_cast<std::int64_t>(b) * kReplicateBlock;
    const std::int64_t end = std::min(trials, begin + kReplicateBlock);
    auto& totals = block_totals[b];
    for (std::int64_t rep = begin; rep < end; ++rep) {
      sampler.draw(n, rng, taken);
      for (std::size_t k = 0; k < classes; ++k) totals[k] += taken[k];
    }
  });

  std::vector<std::int64_t> totals(classes, 0);
  for (const auto& bt : block_totals)
    for (std::size_t k = 0; k < classes; ++k) totals[k] += bt[k];
  return totals;
}

InclusionMap estimate_inclusion_by_class(const DegreeDistribution& dist, std::int64_t n,
                                         std::int64_t trials, std::uint64_t seed) {
  if (!dist.integral()) fail(ErrorCode::InvalidArgument, "simulation population needs integer counts");
  std::vector<int> degrees;
  std::vector<std::int64_t> counts;
  for (const DegreeClass& c : dist.classes()) {
    if (c.count <= 0.0) continue;
    degrees.push_back(c.degree);
    counts.push_back(static_cast<std::int64_t>(c.count));
  }
  const auto totals = simulate_class_totals(degrees, counts, n, trials, seed);

  InclusionMap out;
  out.n = n;
  out.N = dist.total();
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    out.probs[degrees[k]] = (static_cast<double>(totals[k]) + 1.0) /
                            (static_cast<double>(trials) * static_cast<double>(counts[k]) + 1.0);
  }
  return out;
}

std::vector<double> fattorini_unit_probs(const PopulationSizes& pop, std::size_t n,
                                         std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  require_sample_fits(static_cast<std::int64_t>(n), static_cast<std::int64_t>(pop.size()));

  const auto blocks = static_cast<std::size_t>(block_count(trials));
  std::vector<std::vector<std::int64_t>> block_hits(blocks, std::vector<std::int64_t>(pop.size(), 0));
  parallel_for(blocks, [&](std::size_t b) {
    Rng rng = make_stream(seed, {b});
    const std::int64_t begin = static_cast<std::int64_t>(b) * kReplicateBlock;
    const std::int64_t end = std::min(trials, begin + kReplicateBlock);
    for (std::int64_t rep = begin; rep < end; ++rep)
      for (std::size_t i : draw_ppswor(pop, n, rng)) ++block_hits[b][i];
  });

  std::vector<double> pi(pop.size(), 0.0);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    std::int64_t hits = 0;
    for (const auto& bh : block_hits) hits += bh[i];
    pi[i] = (static_cast<double>(hits) + 1.0) / (static_cast<double>(trials) + 1.0);
  }
  return pi;
}

}  // namespace rdsss
