#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rdsss/classic.hpp"
#include "test_support.hpp"

using namespace rdsss;

TEST(MuVh, Examples) {
  EXPECT_NEAR(mu_vh(std::vector<int>{2, 2, 2}, std::vector<double>{1, 0, 0}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu_vh(std::vector<int>{1, 2}, std::vector<double>{1, 0}), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mu_vh(std::vector<int>{1, 2, 4}, std::vector<double>{0, 1, 1}), 3.0 / 7.0, 1e-15);
}

TEST(MuVh, Errors) {
  EXPECT_ERROR_CODE(mu_vh(std::vector<int>{}, std::vector<double>{}), ErrorCode::EmptySample);
  EXPECT_ERROR_CODE(mu_vh(RdsSample{}), ErrorCode::EmptySample);
  EXPECT_ERROR_CODE(mu_vh(std::vector<int>{1, 2}, std::vector<double>{1}), ErrorCode::InvalidArgument);
}

TEST(MuMean, Examples) {
  EXPECT_DOUBLE_EQ(mu_mean(std::vector<double>{1, 0, 0, 0, 0}), 0.2);
  EXPECT_DOUBLE_EQ(mu_mean(std::vector<double>{1, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(mu_mean(std::vector<double>{0, 1, 1, 0}), 0.5);
  EXPECT_ERROR_CODE(mu_mean(std::vector<double>{}), ErrorCode::EmptySample);
}

TEST(MuVh, Properties) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 100; ++rep) {
    auto s = rdsss::testing::random_fixture(rng(), 1 + rep, 40, true);
    const double vh = mu_vh(s);
    const auto z = s.outcomes();
    EXPECT_GE(vh, *std::min_element(z.begin(), z.end()) - 1e-15);
    EXPECT_LE(vh, *std::max_element(z.begin(), z.end()) + 1e-15);
    // scaling every degree by a constant leaves the weights' ratios unchanged
    auto scaled = s;
    for (auto& r : scaled.records) r.degree *= 3;
    EXPECT_NEAR(mu_vh(scaled), vh, 1e-12);
    std::shuffle(s.records.begin(), s.records.end(), rng);
    EXPECT_NEAR(mu_vh(s), vh, 1e-12);
  }
}

TEST(HajekMean, ConstantInclusionIsMean) {
  const std::vector<double> z{0, 1, 1, 0, 1};
  EXPECT_NEAR(hajek_mean(z, std::vector<double>(5, 0.3)), 0.6, 1e-15);
  EXPECT_ERROR_CODE(hajek_mean(z, std::vector<double>{0.3, 0.3, 0.0, 0.3, 0.3}),
                    ErrorCode::ZeroInclusionProbability);
}

TEST(ActivityRatio, Examples) {
  EXPECT_DOUBLE_EQ(activity_ratio(std::vector<int>{7, 7, 7}, std::vector<double>{1, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(activity_ratio(std::vector<int>{14, 7}, std::vector<double>{1, 0}), 2.0);
  EXPECT_DOUBLE_EQ(activity_ratio(std::vector<int>{4, 2, 1, 1}, std::vector<double>{1, 1, 0, 0}), 3.0);
  EXPECT_ERROR_CODE(activity_ratio(std::vector<int>{4, 2}, std::vector<double>{1, 1}), ErrorCode::DegenerateGroup);
}

TEST(NhatBounds, Examples) {
  auto b = nhat_bounds(1000, 500);
  EXPECT_DOUBLE_EQ(b.small, 750.0);
  EXPECT_DOUBLE_EQ(b.large, 1250.0);
  b = nhat_bounds(300, 300);
  EXPECT_EQ(b.small_rounded, 300);
  EXPECT_EQ(b.large_rounded, 300);
  b = nhat_bounds(625, 500);
  EXPECT_DOUBLE_EQ(b.small, 562.5);
  EXPECT_DOUBLE_EQ(b.large, 687.5);
  EXPECT_EQ(b.small_rounded, 563);
  EXPECT_EQ(b.large_rounded, 688);
  EXPECT_ERROR_CODE(nhat_bounds(10, 11), ErrorCode::SampleExceedsPopulation);
}

TEST(NhatBounds, SmallNeverBelowSample) {
  for (std::int64_t N = 1; N < 300; ++N)
    for (std::int64_t n = 1; n <= N; n += 7) {
      const auto b = nhat_bounds(N, n);
      EXPECT_GE(b.small_rounded, n);
      EXPECT_LE(b.small_rounded, N);
      EXPECT_GE(b.large_rounded, N);
    }
}
