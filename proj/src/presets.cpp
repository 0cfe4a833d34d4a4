#include "rdsss/presets.hpp"

#include <cmath>
#include <cstdio>

#include "rdsss/error.hpp"

namespace rdsss {
namespace {

struct Scale {
  std::int64_t n;
  std::int64_t replicates;
  bool paper;
};

// Paper scale fixes n = 500 and lists its population sizes explicitly; the
// desk scale keeps the fractions with n = 125.
std::int64_t population_for(const Scale& scale, double fraction) {
  if (scale.paper) {
    static constexpr std::pair<double, std::int64_t> kPaperSizes[] = {
        {0.5, 1000}, {0.6, 835}, {0.7, 715}, {0.8, 625}, {0.9, 555}, {0.95, 525}};
    for (const auto& [f, N] : kPaperSizes)
      if (std::abs(f - fraction) < 1e-9) return N;
  }
  return std::llround(static_cast<double>(scale.n) / fraction);
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Scenario base_scenario(const Scale& scale, double fraction, double w) {
  Scenario s;
  s.net.N = population_for(scale, fraction);
  s.net.prevalence = 0.2;
  s.net.mean_degree = 7.0;
  s.net.w = w;
  s.net.R = 5.0;
  s.design.seed_count = 10;
  s.design.coupons = 2;
  s.design.target_n = scale.n;
  s.design.seed_regime = SeedRegime::Random;
  s.design.reseed = true;
  s.replicates = scale.replicates;
  s.sim.trials = 500;
  s.sim.iterations = 3;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const char* base : {"fig1", "fig3", "table2", "fig6"})
    for (const char* scale : {"-desk", "-paper"}) out.push_back(std::string(base) + scale);
  return out;
}

StudyPreset make_preset(std::string_view name) {
  const auto dash = name.rfind('-');
  if (dash == std::string_view::npos) fail(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  const std::string_view base = name.substr(0, dash);
  const std::string_view scale_name = name.substr(dash + 1);
  Scale scale{};
  if (scale_name == "desk") {
    scale = {125, 200, false};
  } else if (scale_name == "paper") {
    scale = {500, 1000, true};
  } else {
    fail(ErrorCode::InvalidArgument, "unknown preset scale '" + std::string(scale_name) + "'");
  }

  StudyPreset preset;
  preset.name = std::string(name);
  preset.long_running = scale.paper;

  if (base == "fig1") {
    preset.description = "bias of VH and SS over sample fraction x activity ratio";
    for (double f : kSampleFractions) {
      for (double w : kActivityRatios) {
        Scenario s = base_scenario(scale, f, w);
        s.id = fmt("fig1_f%.2f_w%.1f", f, w);
        s.estimators = {.ss = true, .vh = true, .mean = false};
        preset.scenarios.push_back(s);
      }
    }
  } else if (base == "fig3") {
    preset.description = "SS under true, under- and over-estimated N at w=1.4";
    for (double f : kSampleFractions) {
      Scenario s = base_scenario(scale, f, 1.4);
      s.id = fmt("fig3_f%.2f_w%.1f", f, 1.4);
      s.assumed_sizes = {{AssumedSize::Kind::True, 0},
                         {AssumedSize::Kind::NhatSmall, 0},
                         {AssumedSize::Kind::NhatLarge, 0}};
      preset.scenarios.push_back(s);
    }
  } else if (base == "table2") {
    preset.description = "MSE with all-infected seeds, w=1, 50% sample, varying homophily";
    for (double R : kHomophilyLevels) {
      Scenario s = base_scenario(scale, 0.5, 1.0);
      s.net.R = R;
      s.design.seed_regime = SeedRegime::AllInfected;
      s.id = "table2_R" + std::to_string(std::lround(R));
      preset.scenarios.push_back(s);
    }
  } else if (base == "fig6") {
    preset.description = "mean, VH and SS for random and all-infected seeds";
    for (SeedRegime regime : {SeedRegime::Random, SeedRegime::AllInfected}) {
      for (double w : {1.0, 1.8}) {
        for (double f : {0.5, 0.7, 0.9}) {
          Scenario s = base_scenario(scale, f, w);
          s.design.seed_regime = regime;
          s.estimators = {.ss = true, .vh = true, .mean = true};
          s.id = fmt("fig6_f%.2f_w%.1f", f, w) + "_" + std::string(to_string(regime));
          preset.scenarios.push_back(s);
        }
      }
    }
  } else {
    fail(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  }
  return preset;
}

}  // namespace rdsss
