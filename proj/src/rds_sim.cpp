#include "rdsss/rds_sim.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "rdsss/error.hpp"
#include "rdsss/ppswor.hpp"

namespace rdsss {

std::string_view to_string(SeedRegime regime) {
  switch (regime) {
    case SeedRegime::Random: return "random";
    case SeedRegime::AllInfected: return "all_infected";
    case SeedRegime::AllUninfected: return "all_uninfected";
  }
  return "unknown";
}

SeedRegime parse_seed_regime(std::string_view text) {
  if (text == "random" || text == "RANDOM") return SeedRegime::Random;
  if (text == "all_infected" || text == "ALL_INFECTED") return SeedRegime::AllInfected;
  if (text == "all_uninfected" || text == "ALL_UNINFECTED") return SeedRegime::AllUninfected;
  fail(ErrorCode::InvalidArgument, "unknown seed regime '" + std::string(text) + "'");
}

void validate(const RdsDesign& design) {
  if (design.target_n < 1) fail(ErrorCode::InvalidArgument, "target_n must be >= 1");
  if (design.seed_count < 1 || design.seed_count > design.target_n)
    fail(ErrorCode::InvalidArgument, "seed_count must lie in [1, target_n]");
  if (design.coupons < 1) fail(ErrorCode::InvalidArgument, "coupons must be >= 1");
}

namespace {

std::vector<std::uint32_t> pps_draw(const Graph& g, const std::vector<std::uint32_t>& eligible,
                                    std::size_t count, Rng& rng) {
  std::vector<int> sizes;
  sizes.reserve(eligible.size());
  for (std::uint32_t node : eligible) sizes.push_back(g.degree(node));
  const PopulationSizes pop(std::move(sizes));
  std::vector<std::uint32_t> out;
  out.reserve(count);
  for (std::size_t idx : draw_ppswor(pop, count, rng)) out.push_back(eligible[idx]);
  return out;
}

}  // namespace

std::vector<std::uint32_t> draw_seeds(const Graph& g, const RdsDesign& design, Rng& rng) {
  validate(design);
  std::vector<std::uint32_t> eligible;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) continue;
    const bool infected = g.z()[i] != 0;
    if (design.seed_regime == SeedRegime::AllInfected && !infected) continue;
    if (design.seed_regime == SeedRegime::AllUninfected && infected) continue;
    eligible.push_back(static_cast<std::uint32_t>(i));
  }
  const auto wanted = static_cast<std::size_t>(design.seed_count);
  if (eligible.size() < wanted) {
    fail(ErrorCode::InsufficientEligibleNodes,
         std::to_string(eligible.size()) + " eligible nodes for " + std::to_string(wanted) + " seeds (regime " +
             std::string(to_string(design.seed_regime)) + ")");
  }
  return pps_draw(g, eligible, wanted, rng);
}

RdsRun run_rds(const Graph& g, const RdsDesign& design, Rng& rng) {
  validate(design);
  if (design.target_n > static_cast<std::int64_t>(g.node_count()))
    fail(ErrorCode::SampleExceedsPopulation, "target sample size exceeds the number of nodes");
  const auto seeds = draw_seeds(g, design, rng);
  return run_rds_from(g, design, seeds, rng);
}

RdsRun run_rds_from(const Graph& g, const RdsDesign& design, const std::vector<std::uint32_t>& seeds,
                    Rng& rng) {
  validate(design);
  const auto target = static_cast<std::size_t>(std::min<std::int64_t>(design.target_n,
                                                                      static_cast<std::int64_t>(g.node_count())));
  RdsRun run;
  std::vector<std::uint8_t> sampled(g.node_count(), 0);
  std::vector<std::int32_t> record_of(g.node_count(), -1);
  std::deque<std::uint32_t> queue;

  auto enroll = [&](std::uint32_t node, std::int32_t recruiter_record) {
    RdsRecord r;
    r.id = std::to_string(node);
    r.degree = g.degree(node);
    r.outcome = g.z()[node];
    if (recruiter_record >= 0) {
      const RdsRecord& rec = run.sample.records[static_cast<std::size_t>(recruiter_record)];
      r.recruiter_id = rec.id;
      r.wave = rec.wave + 1;
    }
    record_of[node] = static_cast<std::int32_t>(run.sample.records.size());
    sampled[node] = 1;
    run.sample.records.push_back(std::move(r));
    run.nodes.push_back(node);
    queue.push_back(node);
  };

  for (std::uint32_t s : seeds) {
    if (run.sample.size() >= target) break;
    if (s >= g.node_count()) fail(ErrorCode::InvalidArgument, "seed node out of range");
    if (sampled[s]) fail(ErrorCode::InvalidArgument, "duplicate seed node");
    enroll(s, -1);
  }

  std::vector<std::uint32_t> pool;
  while (run.sample.size() < target) {
    if (queue.empty()) {
      if (!design.reseed) {
        run.sample.exhausted = true;
        break;
      }
      std::vector<std::uint32_t> eligible;
      for (std::size_t i = 0; i < g.node_count(); ++i)
        if (!sampled[i] && g.degree(i) > 0) eligible.push_back(static_cast<std::uint32_t>(i));
      if (eligible.empty()) {
        run.sample.exhausted = true;
        break;
      }
      enroll(pps_draw(g, eligible, 1, rng).front(), -1);
      ++run.reseeds;
      continue;
    }

    const std::uint32_t recruiter = queue.front();
    queue.pop_front();
    pool.clear();
    for (std::uint32_t alter : g.neighbors(recruiter))
      if (!sampled[alter]) pool.push_back(alter);

    for (std::int64_t c = 0; c < design.coupons && !pool.empty() && run.sample.size() < target; ++c) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const std::uint32_t chosen = pool[pick(rng)];
      enroll(chosen, record_of[recruiter]);
      pool.erase(std::remove(pool.begin(), pool.end(), chosen), pool.end());
    }
  }
  return run;
}

}  // namespace rdsss
