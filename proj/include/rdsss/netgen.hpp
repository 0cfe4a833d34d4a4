#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rdsss/classic.hpp"
#include "rdsss/domain.hpp"
#include "rdsss/rng.hpp"

namespace rdsss {

struct NetParams {
  std::int64_t N = 1000;
  double prevalence = 0.2;
  double mean_degree = 7.0;
  double w = 1.0;  // activity ratio
  double R = 5.0;  // homophily: P(I-I tie) / P(I-U tie)

  std::int64_t infected() const;  // round(prevalence * N)
};

struct MixingProbs {
  double p_ii = 0.0;
  double p_iu = 0.0;
  double p_uu = 0.0;
};

// Undirected multigraph with a binary node attribute. A self-loop contributes
// 2 to its node's degree and appears twice in that node's neighbor list.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::uint8_t> z, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

  std::size_t node_count() const noexcept { return z_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::uint8_t>& z() const noexcept { return z_; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const noexcept { return edges_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t node) const { return adjacency_[node]; }
  int degree(std::size_t node) const { return static_cast<int>(adjacency_[node].size()); }
  std::vector<int> degrees() const;

 private:
  std::vector<std::uint8_t> z_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Closed-form dyad probabilities matching mean degree, activity ratio and
// homophily in expectation. Throws InfeasibleParams naming the first cell
// outside [0, 1].
MixingProbs solve_mixing_probs(const NetParams& params);

// Dyad-independent sampler: nodes [0, N_I) are infected; each dyad is present
// independently with its cell probability.
Graph sample_mixing_graph(std::int64_t N, std::int64_t infected, const MixingProbs& probs, Rng& rng);
Graph sample_mixing_graph(const NetParams& params, Rng& rng);

// Uniform random matching of edge stubs; loops and multi-edges are kept.
// Attributes are all zero. Throws OddStubCount.
Graph sample_configuration_graph(const DegreeDistribution& dist, Rng& rng);

ScenarioDescriptors graph_descriptors(const Graph& g);

// Expected (mean degree, w, R) implied by a set of cell probabilities.
ScenarioDescriptors expected_descriptors(std::int64_t N, std::int64_t infected, const MixingProbs& probs);

}  // namespace rdsss
