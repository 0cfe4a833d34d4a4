#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdsss/harness.hpp"

namespace rdsss {

struct StudyPreset {
  std::string name;
  std::string description;
  bool long_running = false;
  std::vector<Scenario> scenarios;
};

// fig1 | fig3 | table2 | fig6, each with a -desk or -paper suffix.
StudyPreset make_preset(std::string_view name);
std::vector<std::string> preset_names();

inline constexpr double kSampleFractions[] = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
inline constexpr double kActivityRatios[] = {0.5, 0.8, 1.0, 1.1, 1.4, 1.8, 2.5, 3.0};
inline constexpr double kHomophilyLevels[] = {1.0, 2.0, 3.0, 5.0, 13.0};

}  // namespace rdsss
