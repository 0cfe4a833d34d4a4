#include "rdsss/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rdsss/error.hpp"
#include "rdsss/kernels.hpp"

namespace rdsss {

std::int64_t NetParams::infected() const {
  return static_cast<std::int64_t>(std::llround(prevalence * static_cast<double>(N)));
}

Graph::Graph(std::vector<std::uint8_t> z, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : z_(std::move(z)), edges_(std::move(edges)), adjacency_(z_.size()) {
  for (const auto& [u, v] : edges_) {
    if (u >= z_.size() || v >= z_.size()) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(adjacency_.size());
  for (std::size_t i = 0; i < adjacency_.size(); ++i) out[i] = degree(i);
  return out;
}

MixingProbs solve_mixing_probs(const NetParams& p) {
  if (p.N < 2) fail(ErrorCode::InfeasibleParams, "N must be at least 2");
  if (!(p.prevalence > 0.0 && p.prevalence < 1.0))
    fail(ErrorCode::InfeasibleParams, "prevalence must lie in (0, 1)");
  if (!(p.mean_degree > 0.0) || !(p.w > 0.0) || !(p.R > 0.0))
    fail(ErrorCode::InfeasibleParams, "mean_degree, w and R must be positive");

  const double n_i = static_cast<double>(p.infected());
  const double n_u = static_cast<double>(p.N) - n_i;
  if (n_i < 2.0 || n_u < 2.0)
    fail(ErrorCode::InfeasibleParams, "both groups need at least two nodes");

  const double d_i = p.mean_degree * static_cast<double>(p.N) * p.w / (n_i * p.w + n_u);
  MixingProbs out;
  out.p_iu = d_i / (p.R * (n_i - 1.0) + n_u);
  out.p_ii = p.R * out.p_iu;
  out.p_uu = (d_i / p.w - out.p_iu * n_i) / (n_u - 1.0);

  auto check = [](double value, const char* cell) {
    if (!(value >= 0.0 && value <= 1.0 + 1e-12)) {
      fail(ErrorCode::InfeasibleParams,
           std::string("cell ") + cell + " probability " + std::to_string(value) + " is outside [0, 1]");
    }
  };
  check(out.p_ii, "II");
  check(out.p_iu, "IU");
  check(out.p_uu, "UU");
  out.p_ii = std::min(out.p_ii, 1.0);
  out.p_iu = std::min(out.p_iu, 1.0);
  out.p_uu = std::min(out.p_uu, 1.0);
  return out;
}

Graph sample_mixing_graph(std::int64_t N, std::int64_t infected, const MixingProbs& probs, Rng& rng) {
  if (N < 1 || infected < 0 || infected > N)
    fail(ErrorCode::InvalidArgument, "bad node counts for mixing graph");
  const auto nodes = static_cast<std::size_t>(N);
  const auto n_i = static_cast<std::size_t>(infected);
  std::vector<std::uint8_t> z(nodes, 0);
  std::fill(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n_i), std::uint8_t{1});

  // Row thresholds: for row i the column probabilities only depend on z_i.
  std::vector<double> row_infected(nodes), row_uninfected(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    row_infected[j] = j < n_i ? probs.p_ii : probs.p_iu;
    row_uninfected[j] = j < n_i ? probs.p_iu : probs.p_uu;
  }

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> u(nodes);
  std::vector<std::uint32_t> hits(nodes);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t i = 0; i + 1 < nodes; ++i) {
    const std::size_t cols = nodes - i - 1;
    for (std::size_t j = 0; j < cols; ++j) u[j] = unif(rng);
    const auto& row = i < n_i ? row_infected : row_uninfected;
    const std::size_t found =
        kernels::select_below(std::span<const double>(u.data(), cols),
                              std::span<const double>(row.data() + i + 1, cols),
                              static_cast<std::uint32_t>(i + 1), hits);
    for (std::size_t h = 0; h < found; ++h) edges.emplace_back(static_cast<std::uint32_t>(i), hits[h]);
  }
  return Graph(std::move(z), std::move(edges));
}

Graph sample_mixing_graph(const NetParams& params, Rng& rng) {
  return sample_mixing_graph(params.N, params.infected(), solve_mixing_probs(params), rng);
}

Graph sample_configuration_graph(const DegreeDistribution& dist, Rng& rng) {
  if (!dist.integral()) fail(ErrorCode::InvalidArgument, "configuration model needs integer counts");
  const std::vector<int> degrees = dist.unit_degrees();
  std::vector<std::uint32_t> stubs;
  for (std::size_t node = 0; node < degrees.size(); ++node)
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[node]), static_cast<std::uint32_t>(node));
  if (stubs.size() % 2 != 0)
    fail(ErrorCode::OddStubCount, "total degree " + std::to_string(stubs.size()) + " is odd");

  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t s = 0; s < stubs.size(); s += 2) edges.emplace_back(stubs[s], stubs[s + 1]);
  return Graph(std::vector<std::uint8_t>(degrees.size(), 0), std::move(edges));
}

ScenarioDescriptors graph_descriptors(const Graph& g) {
  const std::size_t nodes = g.node_count();
  if (nodes == 0) fail(ErrorCode::DegenerateGroup, "empty graph");
  std::vector<double> z(nodes);
  double n_i = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    z[i] = g.z()[i];
    n_i += z[i];
  }
  const double n_u = static_cast<double>(nodes) - n_i;
  if (n_i == 0.0 || n_u == 0.0) fail(ErrorCode::DegenerateGroup, "graph has only one attribute group");

  const auto degrees = g.degrees();
  ScenarioDescriptors d;
  d.prevalence = n_i / static_cast<double>(nodes);
  d.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(nodes);
  d.activity_ratio = activity_ratio(degrees, z);

  double e_ii = 0.0, e_iu = 0.0;
  for (const auto& [a, b] : g.edges()) {
    if (a == b) continue;
    const int groups = g.z()[a] + g.z()[b];
    if (groups == 2) e_ii += 1.0;
    if (groups == 1) e_iu += 1.0;
  }
  const double density_ii = n_i > 1.0 ? e_ii / (n_i * (n_i - 1.0) / 2.0) : 0.0;
  if (e_iu == 0.0) {
    d.homophily = std::numeric_limits<double>::infinity();
    d.homophily_infinite = true;
  } else {
    d.homophily = density_ii / (e_iu / (n_i * n_u));
  }
  return d;
}

ScenarioDescriptors expected_descriptors(std::int64_t N, std::int64_t infected, const MixingProbs& probs) {
  const double n_i = static_cast<double>(infected);
  const double n_u = static_cast<double>(N - infected);
  const double d_i = probs.p_ii * (n_i - 1.0) + probs.p_iu * n_u;
  const double d_u = probs.p_iu * n_i + probs.p_uu * (n_u - 1.0);
  ScenarioDescriptors d;
  d.prevalence = n_i / static_cast<double>(N);
  d.mean_degree = (n_i * d_i + n_u * d_u) / static_cast<double>(N);
  d.activity_ratio = d_i / d_u;
  d.homophily_infinite = probs.p_iu == 0.0;
  d.homophily = d.homophily_infinite ? std::numeric_limits<double>::infinity() : probs.p_ii / probs.p_iu;
  return d;
}

}  // namespace rdsss
