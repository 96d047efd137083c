#include "ghb/error.hpp"

namespace ghb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::EmptyConfiguration: return "EmptyConfiguration";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::ChartDomain: return "ChartDomain";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::OnAxis: return "OnAxis";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

}  // namespace ghb
