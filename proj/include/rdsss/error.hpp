#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdsss {

enum class ErrorCode {
  SampleExceedsPopulation,
  OracleLimitExceeded,
  EmptySample,
  DegenerateGroup,
  ZeroInclusionProbability,
  InfeasibleParams,
  OddStubCount,
  InsufficientEligibleNodes,
  MissingPopulationSize,
  InvalidArgument,
  ParseError,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; the code is what callers
// (notably the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace rdsss
