#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rdsss/classic.hpp"
#include "rdsss/ppswor.hpp"
#include "rdsss/ss_estimator.hpp"
#include "test_support.hpp"

using namespace rdsss;
using rdsss::testing::chain_sample;
using rdsss::testing::random_fixture;

TEST(InitialMap, Examples) {
  auto f = initial_map({{2, 3}}, 6);
  EXPECT_NEAR(f.at(2), 0.5, 1e-15);
  EXPECT_NEAR(3.0 / f.at(2), 6.0, 1e-12);

  f = initial_map({{1, 1}, {2, 1}}, 3);
  EXPECT_NEAR(f.at(1), 0.5, 1e-15);
  EXPECT_NEAR(f.at(2), 1.0, 1e-15);

  f = initial_map({{1, 7}}, 7);
  EXPECT_NEAR(f.at(1), 1.0, 1e-15);
}

TEST(InitialMap, NormalizesToPopulation) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const auto v = degree_counts(random_fixture(rng(), 20 + rep, 30, true));
    const std::int64_t N = 50 + 17 * rep;
    const auto f = initial_map(v, N);
    double implied = 0.0;
    for (const auto& [k, c] : v) implied += c / f.at(k);
    EXPECT_NEAR(implied, static_cast<double>(N), 1e-9 * N);
  }
}

TEST(InitialMap, Errors) {
  EXPECT_ERROR_CODE(initial_map({{1, 5}}, 4), ErrorCode::SampleExceedsPopulation);
  EXPECT_ERROR_CODE(initial_map({}, 4), ErrorCode::EmptySample);
}

TEST(UpdateDegreeDistribution, Examples) {
  InclusionMap f;
  f.probs = {{1, 0.5}, {2, 1.0}};
  auto d = update_degree_distribution({{1, 1}, {2, 1}}, f, 3);
  EXPECT_NEAR(d.count(1), 2.0, 1e-12);
  EXPECT_NEAR(d.count(2), 1.0, 1e-12);

  f.probs = {{1, 0.3}, {4, 0.3}, {9, 0.3}};
  d = update_degree_distribution({{1, 2}, {4, 6}, {9, 2}}, f, 50);
  EXPECT_NEAR(d.count(1), 10.0, 1e-12);
  EXPECT_NEAR(d.count(4), 30.0, 1e-12);
  EXPECT_NEAR(d.count(9), 10.0, 1e-12);

  f.probs = {{5, 0.01}};
  d = update_degree_distribution({{5, 4}}, f, 123);
  EXPECT_NEAR(d.count(5), 123.0, 1e-12);

  f.probs = {{1, 0.0}, {2, 0.5}};
  EXPECT_ERROR_CODE(update_degree_distribution({{1, 1}, {2, 1}}, f, 3), ErrorCode::ZeroInclusionProbability);
}

TEST(RoundPopulation, SumsToNAndCoversSample) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = degree_counts(random_fixture(rng(), 10 + rep % 40, 25, rep % 3 == 0));
    std::int64_t n = 0;
    for (const auto& [k, c] : v) n += c;
    const std::int64_t N = n + static_cast<std::int64_t>(rng() % 200);
    InclusionMap f;
    for (const auto& [k, c] : v) f.probs[k] = u(rng);
    const auto real = update_degree_distribution(v, f, N);
    const auto rounded = round_population(real, v, N);
    ASSERT_TRUE(rounded.integral());
    EXPECT_DOUBLE_EQ(rounded.total(), static_cast<double>(N));
    for (const auto& [k, c] : v) EXPECT_GE(rounded.count(k), static_cast<double>(c));
  }
}

TEST(Isotonic, PoolsViolators) {
  InclusionMap f;
  f.probs = {{1, 0.2}, {2, 0.5}, {3, 0.3}, {4, 0.9}};
  const DegreeDistribution pop({{1, 1.0}, {2, 1.0}, {3, 3.0}, {4, 1.0}});
  const auto g = isotonic_nondecreasing(f, pop);
  EXPECT_DOUBLE_EQ(g.at(1), 0.2);
  EXPECT_NEAR(g.at(2), (0.5 + 3 * 0.3) / 4.0, 1e-15);
  EXPECT_NEAR(g.at(3), (0.5 + 3 * 0.3) / 4.0, 1e-15);
  EXPECT_DOUBLE_EQ(g.at(4), 0.9);
}

TEST(FitSs, CensusShortCircuit) {
  const auto fit = fit_ss(DegreeTally{{1, 3}, {5, 2}, {9, 1}}, 6, SimConfig{});
  for (const auto& [k, p] : fit.inclusion.probs) EXPECT_EQ(p, 1.0);
  EXPECT_EQ(fit.moment_residual, 0.0);
}

TEST(FitSs, ExactOracleFixedPoint) {
  const DegreeTally v{{1, 5}, {4, 5}};
  SimConfig config;
  config.iterations = 20;
  config.isotonic = false;
  const InclusionOracle oracle = [](const DegreeDistribution& d, std::int64_t n) {
    return exact_class_inclusion(d, n);
  };
  const auto fit = fit_ss(v, 20, config, oracle);
  EXPECT_LT(fit.moment_residual, 0.05);
  EXPECT_NEAR(fit.nhat.total(), 20.0, 1e-9);
  EXPECT_GT(fit.nhat.count(1), fit.nhat.count(4));
  EXPECT_LT(fit.inclusion.at(1), fit.inclusion.at(4));
}

TEST(FitSs, EqualDegreesGiveUniformInclusion) {
  const DegreeTally v{{6, 40}};
  SimConfig config;
  config.trials = 2000;
  const auto fit = fit_ss(v, 200, config);
  EXPECT_NEAR(fit.nhat.count(6), 200.0, 1e-9);
  // (M n + 1) / (M N + 1) exactly, since every draw samples n units of the class.
  EXPECT_NEAR(fit.inclusion.at(6), (2000.0 * 40 + 1) / (2000.0 * 200 + 1), 1e-15);
}

TEST(FitSs, ConvergenceToleranceStopsEarly) {
  SimConfig config;
  config.iterations = 50;
  config.convergence_tol = 0.5;
  const auto fit = fit_ss(DegreeTally{{1, 5}, {3, 5}, {8, 5}}, 60, config);
  EXPECT_LT(fit.iterations_run, 50);
}

TEST(FitSs, DeterministicGivenSeed) {
  const auto s = random_fixture(5, 80, 30, true);
  SimConfig config;
  config.trials = 300;
  config.rng_seed = 44;
  const auto a = mu_ss(s, 400, config);
  const auto b = mu_ss(s, 400, config);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.fit->inclusion.probs, b.fit->inclusion.probs);
}

TEST(FitSs, PermutationInvariant) {
  std::mt19937_64 rng(33);
  SimConfig config;
  config.trials = 200;
  for (int rep = 0; rep < 5; ++rep) {
    auto s = random_fixture(rng(), 60, 20, true);
    const double before = mu_ss(s, 240, config).value;
    std::shuffle(s.records.begin(), s.records.end(), rng);
    EXPECT_NEAR(mu_ss(s, 240, config).value, before, 1e-12);
  }
}

TEST(MuSs, CensusEqualsMeanExactly) {
  std::mt19937_64 rng(34);
  for (int rep = 0; rep < 30; ++rep) {
    const auto s = random_fixture(rng(), 1 + rep * 5, 40, true);
    EXPECT_EQ(mu_ss(s, static_cast<std::int64_t>(s.size()), SimConfig{}).value, mu_mean(s));
  }
}

TEST(MuSs, EqualDegreeIsMean) {
  const auto s = chain_sample(std::vector<int>(30, 4), {1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0,
                                                        0, 1, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0});
  SimConfig config;
  config.trials = 200;
  for (std::int64_t N : {30, 31, 100, 100000}) EXPECT_NEAR(mu_ss(s, N, config).value, mu_mean(s), 1e-12) << N;
}

TEST(MuSs, LargePopulationApproachesVh) {
  const auto s = random_fixture(77, 60, 30, true);
  SimConfig config;
  config.trials = 10000;
  const double ss = mu_ss(s, 1000 * 60, config).value;
  EXPECT_NEAR(ss, mu_vh(s), 0.005);
}

TEST(MuSs, BetweenMeanAndVhForAssociatedSample) {
  const auto s = random_fixture(78, 150, 30, true);
  SimConfig config;
  config.trials = 1000;
  const double ss = mu_ss(s, 250, config).value;
  EXPECT_LT(ss, mu_mean(s));
  EXPECT_GT(ss, mu_vh(s));
}

TEST(Estimate, Dispatch) {
  const auto s = chain_sample({1, 2}, {1, 0});
  EXPECT_NEAR(estimate(s, Method::VH, std::nullopt, {}).value, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(estimate(s, Method::MEAN, std::nullopt, {}).value, 0.5, 1e-15);
  EXPECT_ERROR_CODE(estimate(s, Method::SS, std::nullopt, {}), ErrorCode::MissingPopulationSize);
  EXPECT_ERROR_CODE(estimate(s, Method::SS, 1, {}), ErrorCode::SampleExceedsPopulation);
  EXPECT_ERROR_CODE(estimate(RdsSample{}, Method::SS, 5, {}), ErrorCode::EmptySample);
  EXPECT_EQ(parse_method("vh"), Method::VH);
  EXPECT_ERROR_CODE(parse_method("ht"), ErrorCode::InvalidArgument);
}

TEST(ParseGrid, Examples) {
  EXPECT_EQ(parse_grid("10:10:1"), (std::vector<std::int64_t>{10}));
  EXPECT_EQ(parse_grid("100:200:3"), (std::vector<std::int64_t>{100, 150, 200}));
  EXPECT_EQ(parse_grid("5:7:10"), (std::vector<std::int64_t>{5, 6, 7}));
  const auto g = parse_grid("301:6000:25");
  EXPECT_EQ(g.front(), 301);
  EXPECT_EQ(g.back(), 6000);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_ERROR_CODE(parse_grid("1:2"), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(parse_grid("9:2:3"), ErrorCode::InvalidArgument);
  EXPECT_ERROR_CODE(parse_grid("a:2:3"), ErrorCode::InvalidArgument);
}

TEST(SensitivitySweep, Examples) {
  const auto s = random_fixture(9, 40, 20, true);
  SimConfig config;
  config.trials = 300;
  auto pts = sensitivity_sweep(s, {40}, config);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].estimate.value, mu_mean(s));

  const auto flat = chain_sample(std::vector<int>(10, 3), {1, 0, 0, 1, 0, 0, 0, 1, 0, 0});
  pts = sensitivity_sweep(flat, {10, 1000000}, config);
  for (const auto& p : pts) EXPECT_NEAR(p.estimate.value, 0.3, 1e-12);

  EXPECT_ERROR_CODE(sensitivity_sweep(s, {39, 100}, config), ErrorCode::SampleExceedsPopulation);
}
