#include "rdsss/error.hpp"

namespace rdsss {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SampleExceedsPopulation: return "SampleExceedsPopulation";
    case ErrorCode::OracleLimitExceeded: return "OracleLimitExceeded";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DegenerateGroup: return "DegenerateGroup";
    case ErrorCode::ZeroInclusionProbability: return "ZeroInclusionProbability";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::OddStubCount: return "OddStubCount";
    case ErrorCode::InsufficientEligibleNodes: return "InsufficientEligibleNodes";
    case ErrorCode::MissingPopulationSize: return "MissingPopulationSize";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace rdsss
