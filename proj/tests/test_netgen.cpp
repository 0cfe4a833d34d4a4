#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rdsss/classic.hpp"
#include "rdsss/netgen.hpp"
#include "test_support.hpp"

using namespace rdsss;

namespace {

struct CellCounts {
  double ii = 0, iu = 0, uu = 0;
};

CellCounts cell_counts(const Graph& g) {
  CellCounts c;
  for (const auto& [a, b] : g.edges()) {
    const int s = g.z()[a] + g.z()[b];
    (s == 2 ? c.ii : s == 1 ? c.iu : c.uu) += 1.0;
  }
  return c;
}

void expect_within_4sigma(double observed, double pairs, double p, const char* cell) {
  const double mean = pairs * p;
  const double sd = std::sqrt(pairs * p * (1.0 - p));
  EXPECT_LE(std::abs(observed - mean), 4.0 * sd + 1e-9) << cell << " expected " << mean;
}

}  // namespace

TEST(SolveMixingProbs, ErdosRenyiCollapse) {
  NetParams p;
  p.N = 500;
  p.mean_degree = 6.0;
  p.w = 1.0;
  p.R = 1.0;
  const auto m = solve_mixing_probs(p);
  const double er = 6.0 / 499.0;
  EXPECT_NEAR(m.p_ii, er, 1e-15);
  EXPECT_NEAR(m.p_iu, er, 1e-15);
  EXPECT_NEAR(m.p_uu, er, 1e-15);
}

TEST(SolveMixingProbs, UninfectedTiesAboutTwiceAsLikely) {
  // With the finite-population terms the ratio is 11165/5593, not exactly 2.
  NetParams p;  // N=1000, prevalence .2, mean degree 7, w=1, R=5
  const auto m = solve_mixing_probs(p);
  EXPECT_NEAR(m.p_uu / m.p_iu, 11165.0 / 5593.0, 1e-12);
  EXPECT_NEAR(m.p_uu / m.p_iu, 2.0, 0.01);
  EXPECT_NEAR(m.p_ii / m.p_iu, 5.0, 1e-12);
}

TEST(SolveMixingProbs, DegreeEquationsRecovered) {
  NetParams p;
  p.N = 100;
  p.prevalence = 0.2;
  p.mean_degree = 5.0;
  p.w = 2.0;
  p.R = 3.0;
  const auto m = solve_mixing_probs(p);
  const double n_i = 20, n_u = 80;
  const double d_i = m.p_ii * (n_i - 1) + m.p_iu * n_u;
  const double d_u = m.p_iu * n_i + m.p_uu * (n_u - 1);
  EXPECT_NEAR((n_i * d_i + n_u * d_u) / 100.0, 5.0, 1e-12);
  EXPECT_NEAR(d_i / d_u, 2.0, 1e-12);
  EXPECT_NEAR(m.p_ii / m.p_iu, 3.0, 1e-12);
}

TEST(SolveMixingProbs, RoundTripOverGrid) {
  for (double w : {0.5, 0.8, 1.0, 1.1, 1.4, 1.8, 2.5, 3.0})
    for (double R : {1.0, 2.0, 3.0, 5.0, 13.0})
      for (std::int64_t N : {250, 625, 1000}) {
        NetParams p;
        p.N = N;
        p.w = w;
        p.R = R;
        const auto m = solve_mixing_probs(p);
        const auto d = expected_descriptors(N, p.infected(), m);
        EXPECT_NEAR(d.mean_degree, 7.0, 1e-9);
        EXPECT_NEAR(d.activity_ratio, w, 1e-9);
        EXPECT_NEAR(d.homophily, R, 1e-9);
      }
}

TEST(SolveMixingProbs, InfeasibleNamesCell) {
  NetParams p;
  p.N = 20;
  p.mean_degree = 18.0;
  p.w = 3.0;
  p.R = 13.0;
  try {
    solve_mixing_probs(p);
    FAIL() << "expected InfeasibleParams";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleParams);
    EXPECT_NE(std::string(e.what()).find("cell"), std::string::npos);
  }
  p = NetParams{};
  p.prevalence = 0.0;
  EXPECT_ERROR_CODE(solve_mixing_probs(p), ErrorCode::InfeasibleParams);
}

TEST(SampleMixingGraph, EmptyAndComplete) {
  Rng rng(1);
  auto g = sample_mixing_graph(30, 6, MixingProbs{0, 0, 0}, rng);
  EXPECT_EQ(g.edge_count(), 0u);
  g = sample_mixing_graph(10, 3, MixingProbs{1, 1, 1}, rng);
  EXPECT_EQ(g.edge_count(), 45u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(g.degree(i), 9);
}

TEST(SampleMixingGraph, SimpleSymmetricNoLoops) {
  Rng rng(2);
  NetParams p;
  p.N = 300;
  p.w = 1.8;
  const auto g = sample_mixing_graph(p, rng);
  EXPECT_EQ(g.node_count(), 300u);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& [a, b] : g.edges()) {
    EXPECT_NE(a, b);
    EXPECT_TRUE(seen.emplace(std::min(a, b), std::max(a, b)).second);
  }
  for (std::size_t v = 0; v < g.node_count(); ++v)
    for (auto u : g.neighbors(v)) {
      const auto& back = g.neighbors(u);
      EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
    }
  EXPECT_EQ(std::count(g.z().begin(), g.z().end(), 1), p.infected());
}

TEST(SampleMixingGraph, CellCountsWithinFourSigma) {
  for (double w : {0.8, 1.4, 2.5}) {
    NetParams p;
    p.w = w;
    const auto m = solve_mixing_probs(p);
    Rng rng(static_cast<std::uint64_t>(w * 100));
    const auto g = sample_mixing_graph(p, rng);
    const auto c = cell_counts(g);
    const double n_i = 200, n_u = 800;
    expect_within_4sigma(c.ii, n_i * (n_i - 1) / 2, m.p_ii, "II");
    expect_within_4sigma(c.iu, n_i * n_u, m.p_iu, "IU");
    expect_within_4sigma(c.uu, n_u * (n_u - 1) / 2, m.p_uu, "UU");
  }
}

TEST(SampleMixingGraph, Deterministic) {
  NetParams p;
  p.N = 200;
  Rng a(5), b(5);
  EXPECT_EQ(sample_mixing_graph(p, a).edges(), sample_mixing_graph(p, b).edges());
}

TEST(SampleMixingGraph, DescriptorsNearTargets) {
  NetParams p;
  p.w = 1.4;
  double md = 0, w = 0;
  const int graphs = 20;
  for (int r = 0; r < graphs; ++r) {
    Rng rng(100 + r);
    const auto d = graph_descriptors(sample_mixing_graph(p, rng));
    md += d.mean_degree / graphs;
    w += d.activity_ratio / graphs;
  }
  EXPECT_NEAR(md, 7.0, 0.2);
  EXPECT_NEAR(w, 1.4, 0.05);
}

TEST(ConfigurationGraph, ForcedMatchings) {
  Rng rng(3);
  auto g = sample_configuration_graph(DegreeDistribution({{1, 2.0}}), rng);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(std::min(g.edges()[0].first, g.edges()[0].second), 0u);
  EXPECT_EQ(std::max(g.edges()[0].first, g.edges()[0].second), 1u);

  g = sample_configuration_graph(DegreeDistribution({{2, 1.0}}), rng);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edges()[0].first, g.edges()[0].second);
  EXPECT_EQ(g.degree(0), 2);
}

TEST(ConfigurationGraph, DegreeSequenceConserved) {
  Rng rng(4);
  const std::vector<DegreeDistribution> cases{
      DegreeDistribution({{3, 4.0}}),
      DegreeDistribution({{1, 10.0}, {2, 7.0}, {5, 4.0}, {11, 2.0}}),
      DegreeDistribution({{4, 100.0}, {7, 50.0}}),
  };
  for (const auto& dist : cases) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto g = sample_configuration_graph(dist, rng);
      EXPECT_EQ(g.degrees(), dist.unit_degrees());
    }
  }
}

TEST(ConfigurationGraph, OddStubs) {
  Rng rng(5);
  EXPECT_ERROR_CODE(sample_configuration_graph(DegreeDistribution({{3, 1.0}}), rng), ErrorCode::OddStubCount);
}

TEST(GraphDescriptors, Examples) {
  Rng rng(6);
  auto g = sample_mixing_graph(12, 5, MixingProbs{1, 1, 1}, rng);
  EXPECT_DOUBLE_EQ(graph_descriptors(g).activity_ratio, 1.0);

  g = sample_mixing_graph(12, 5, MixingProbs{1, 0, 1}, rng);
  const auto d = graph_descriptors(g);
  EXPECT_TRUE(d.homophily_infinite);
  EXPECT_TRUE(std::isinf(d.homophily));

  EXPECT_ERROR_CODE(graph_descriptors(sample_mixing_graph(5, 0, MixingProbs{1, 1, 1}, rng)),
                    ErrorCode::DegenerateGroup);
}
