#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "rdsss/domain.hpp"
#include "rdsss/netgen.hpp"
#include "rdsss/rng.hpp"

namespace rdsss {

enum class SeedRegime { Random, AllInfected, AllUninfected };

std::string_view to_string(SeedRegime regime);
SeedRegime parse_seed_regime(std::string_view text);

struct RdsDesign {
  std::int64_t seed_count = 10;
  std::int64_t coupons = 2;
  std::int64_t target_n = 500;
  SeedRegime seed_regime = SeedRegime::Random;
  // When every chain dies before target_n, draw a fresh degree-proportional
  // seed from the unsampled nodes instead of stopping.
  bool reseed = false;
};

void validate(const RdsDesign& design);

// Successive (degree-proportional, without replacement) draw of seeds among
// the nodes allowed by the regime. Nodes of degree 0 are never eligible.
std::vector<std::uint32_t> draw_seeds(const Graph& g, const RdsDesign& design, Rng& rng);

struct RdsRun {
  RdsSample sample;
  std::vector<std::uint32_t> nodes;  // graph node of each record
  std::int64_t reseeds = 0;
};

// Breadth-first chain referral. Each respondent, in recruitment order,
// recruits up to `coupons` distinct unsampled alters uniformly at random
// (multi-edges weight by multiplicity); recruitment stops at target_n.
RdsRun run_rds(const Graph& g, const RdsDesign& design, Rng& rng);

// Same process starting from given seeds; seed order defines processing order.
RdsRun run_rds_from(const Graph& g, const RdsDesign& design, const std::vector<std::uint32_t>& seeds,
                    Rng& rng);

}  // namespace rdsss
