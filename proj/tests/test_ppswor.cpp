#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "rdsss/ppswor.hpp"
#include "test_support.hpp"

using namespace rdsss;
using rdsss::testing::binomial_se;
using rdsss::testing::brute_force_inclusion;
using rdsss::testing::for_each_population;

TEST(BruteForceOracle, HandEnumeration) {
  // Six ordered pairs of (1,1,2), total 4.
  const auto pi = brute_force_inclusion({1, 1, 2}, 2);
  EXPECT_NEAR(pi[0], 7.0 / 12.0, 1e-15);
  EXPECT_NEAR(pi[1], 7.0 / 12.0, 1e-15);
  EXPECT_NEAR(pi[2], 5.0 / 6.0, 1e-15);
}

TEST(ExactInclusion, Examples) {
  auto pi = exact_inclusion(PopulationSizes({1, 1}), 1);
  EXPECT_NEAR(pi[0], 0.5, 1e-15);
  EXPECT_NEAR(pi[1], 0.5, 1e-15);

  pi = exact_inclusion(PopulationSizes({1, 1, 2}), 2);
  EXPECT_NEAR(pi[0], 7.0 / 12.0, 1e-14);
  EXPECT_NEAR(pi[1], 7.0 / 12.0, 1e-14);
  EXPECT_NEAR(pi[2], 5.0 / 6.0, 1e-14);

  for (double p : exact_inclusion(PopulationSizes({3, 1, 4, 1, 5}), 5)) EXPECT_NEAR(p, 1.0, 1e-14);
}

TEST(ExactInclusion, MatchesBruteForce) {
  for (std::size_t N = 1; N <= 6; ++N) {
    for_each_population(N, 4, [&](const std::vector<int>& sizes) {
      for (std::size_t n = 0; n <= N; ++n) {
        const auto a = exact_inclusion(PopulationSizes(sizes), n);
        const auto b = brute_force_inclusion(sizes, n);
        for (std::size_t i = 0; i < N; ++i) ASSERT_NEAR(a[i], b[i], 1e-12);
      }
    });
  }
}

TEST(ExactInclusion, SumAndMonotonicity) {
  for (std::size_t N = 1; N <= 8; ++N) {
    for_each_population(N, 4, [&](const std::vector<int>& sizes) {
      std::vector<double> prev(N, 0.0);
      for (std::size_t n = 1; n <= N; ++n) {
        const auto pi = exact_inclusion(PopulationSizes(sizes), n);
        ASSERT_NEAR(std::accumulate(pi.begin(), pi.end(), 0.0), static_cast<double>(n), 1e-12);
        for (std::size_t i = 0; i < N; ++i) {
          ASSERT_GT(pi[i], 0.0);
          ASSERT_LE(pi[i], 1.0 + 1e-12);
          ASSERT_GE(pi[i], prev[i] - 1e-12);  // non-decreasing in n
          if (i > 0) {
            ASSERT_GE(pi[i], pi[i - 1] - 1e-12);  // sizes sorted, so non-decreasing in size
          }
        }
        prev = pi;
      }
    });
  }
}

TEST(ExactInclusion, Limits) {
  EXPECT_ERROR_CODE(exact_inclusion(PopulationSizes(std::vector<int>(13, 1)), 2), ErrorCode::OracleLimitExceeded);
  EXPECT_ERROR_CODE(exact_inclusion(PopulationSizes({1, 2}), 3), ErrorCode::SampleExceedsPopulation);
}

TEST(ExactClassInclusion, AgreesWithUnitOracle) {
  for (std::size_t N = 1; N <= 7; ++N) {
    for_each_population(N, 4, [&](const std::vector<int>& sizes) {
      const auto dist = DegreeDistribution::from_degrees(sizes);
      for (std::size_t n = 1; n <= N; ++n) {
        const auto unit = exact_inclusion(PopulationSizes(sizes), n);
        const auto cls = exact_class_inclusion(dist, static_cast<std::int64_t>(n));
        for (std::size_t i = 0; i < N; ++i) ASSERT_NEAR(cls.at(sizes[i]), unit[i], 1e-12);
      }
    });
  }
}

TEST(ExactClassInclusion, ScalesPastUnitOracle) {
  // 40 units is far beyond subset enumeration but cheap by class composition.
  const DegreeDistribution dist({{1, 20.0}, {3, 12.0}, {9, 8.0}});
  const auto f = exact_class_inclusion(dist, 15);
  double expected_n = 0.0;
  for (const auto& c : dist.classes()) expected_n += c.count * f.at(c.degree);
  EXPECT_NEAR(expected_n, 15.0, 1e-10);
  EXPECT_LT(f.at(1), f.at(3));
  EXPECT_LT(f.at(3), f.at(9));
}

TEST(DrawPpswor, CensusIsPermutation) {
  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    auto s = draw_ppswor(PopulationSizes({1, 1, 2}), 3, rng);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(s, (std::vector<std::size_t>{0, 1, 2}));
  }
}

TEST(DrawPpswor, FirstDrawFrequencies) {
  Rng rng(2);
  const int trials = 200000;
  std::array<int, 3> hits{};
  for (int t = 0; t < trials; ++t) ++hits[draw_ppswor(PopulationSizes({1, 1, 2}), 1, rng)[0]];
  const double p[] = {0.25, 0.25, 0.5};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(hits[i] / double(trials), p[i], 4 * binomial_se(p[i], trials));

  std::array<int, 2> sym{};
  for (int t = 0; t < trials; ++t) ++sym[draw_ppswor(PopulationSizes({1, 1}), 1, rng)[0]];
  EXPECT_NEAR(sym[0] / double(trials), 0.5, 4 * binomial_se(0.5, trials));
}

TEST(DrawPpswor, InclusionFrequenciesMatchOracle) {
  const std::vector<int> sizes{1, 2, 2, 3, 5, 8};
  const auto exact = exact_inclusion(PopulationSizes(sizes), 3);
  Rng rng(3);
  const int trials = 100000;
  std::vector<int> hits(sizes.size(), 0);
  for (int t = 0; t < trials; ++t) {
    const auto s = draw_ppswor(PopulationSizes(sizes), 3, rng);
    ASSERT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 3u);
    for (auto i : s) ++hits[i];
  }
  for (std::size_t i = 0; i < sizes.size(); ++i)
    EXPECT_NEAR(hits[i] / double(trials), exact[i], 4 * binomial_se(exact[i], trials));
}

TEST(DrawPpswor, Deterministic) {
  const PopulationSizes pop({4, 1, 7, 2, 2, 9, 3});
  Rng a(99), b(99);
  for (int rep = 0; rep < 20; ++rep) EXPECT_EQ(draw_ppswor(pop, 4, a), draw_ppswor(pop, 4, b));
}

TEST(DrawPpswor, Errors) {
  Rng rng(1);
  EXPECT_ERROR_CODE(draw_ppswor(PopulationSizes({1, 1}), 3, rng), ErrorCode::SampleExceedsPopulation);
  EXPECT_ERROR_CODE(PopulationSizes({1, 0}), ErrorCode::InvalidArgument);
}

TEST(ClassSampler, CompositionFrequencies) {
  // Two classes of sizes 1 and 3, two units each, n=2; compare the
  // distribution of class-1 draws against brute force over ordered pairs.
  const std::vector<int> sizes{1, 1, 3, 3};
  const auto exact = exact_inclusion(PopulationSizes(sizes), 2);
  const std::vector<int> degrees{1, 3};
  const std::vector<std::int64_t> counts{2, 2};
  ClassSampler sampler(degrees, counts);
  Rng rng(5);
  std::vector<std::int64_t> taken(2);
  const int trials = 100000;
  double low = 0.0;
  for (int t = 0; t < trials; ++t) {
    sampler.draw(2, rng, taken);
    ASSERT_EQ(taken[0] + taken[1], 2);
    low += taken[0];
  }
  const double p = exact[0];
  EXPECT_NEAR(low / (2.0 * trials), p, 4 * binomial_se(p, 2.0 * trials));
}

TEST(EstimateInclusionByClass, CensusClass) {
  const auto f = estimate_inclusion_by_class(DegreeDistribution({{1, 2.0}}), 2, 500, 1);
  EXPECT_GE(f.at(1), 0.999);
}

TEST(EstimateInclusionByClass, TwoClassLimit) {
  const auto f = estimate_inclusion_by_class(DegreeDistribution({{1, 1.0}, {2, 1.0}}), 1, 200000, 2);
  EXPECT_NEAR(f.at(1), 1.0 / 3.0, 0.005);
  EXPECT_NEAR(f.at(2), 2.0 / 3.0, 0.005);
}

TEST(EstimateInclusionByClass, WithinFourSeOfOracle) {
  const DegreeDistribution dist({{1, 5.0}, {4, 5.0}});
  const std::vector<int> units = dist.unit_degrees();
  const auto exact = exact_inclusion(PopulationSizes(units), 4);
  const std::int64_t M = 50000;
  const auto f = estimate_inclusion_by_class(dist, 4, M, 3);
  for (const auto& c : dist.classes()) {
    double avg = 0.0;
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i] == c.degree) avg += exact[i] / c.count;
    EXPECT_NEAR(f.at(c.degree), avg, 4 * binomial_se(avg, M * c.count)) << c.degree;
  }
}

TEST(EstimateInclusionByClass, DeterministicAndSeedSensitive) {
  const DegreeDistribution dist({{1, 30.0}, {2, 20.0}, {6, 10.0}});
  const auto a = estimate_inclusion_by_class(dist, 25, 300, 7);
  const auto b = estimate_inclusion_by_class(dist, 25, 300, 7);
  const auto c = estimate_inclusion_by_class(dist, 25, 300, 8);
  EXPECT_EQ(a.probs, b.probs);
  EXPECT_NE(a.probs, c.probs);
}

TEST(EstimateInclusionByClass, Errors) {
  EXPECT_ERROR_CODE(estimate_inclusion_by_class(DegreeDistribution({{1, 2.0}}), 3, 10, 1),
                    ErrorCode::SampleExceedsPopulation);
  EXPECT_ERROR_CODE(estimate_inclusion_by_class(DegreeDistribution({{1, 2.5}}), 1, 10, 1),
                    ErrorCode::InvalidArgument);
}

TEST(FattoriniUnitProbs, Examples) {
  for (double p : fattorini_unit_probs(PopulationSizes({1, 5, 2}), 3, 100, 1)) EXPECT_DOUBLE_EQ(p, 1.0);

  const auto sym = fattorini_unit_probs(PopulationSizes({1, 1}), 1, 10000, 2);
  EXPECT_NEAR(sym[0], 0.5, 0.02);
  EXPECT_NEAR(sym[1], 0.5, 0.02);

  const std::int64_t M = 50000;
  const auto pi = fattorini_unit_probs(PopulationSizes({1, 1, 2}), 2, M, 3);
  const double exact[] = {7.0 / 12.0, 7.0 / 12.0, 5.0 / 6.0};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pi[i], exact[i], 4 * binomial_se(exact[i], M));
}
