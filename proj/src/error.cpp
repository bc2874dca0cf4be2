#include "rigc/error.hpp"

namespace rigc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::SupportContainsZero: return "SupportContainsZero";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooLargeForExactIsomorphism: return "TooLargeForExactIsomorphism";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::DuplicateCommunity: return "DuplicateCommunity";
    case ErrorCode::HalfEdgeMismatch: return "HalfEdgeMismatch";
    case ErrorCode::ZeroDegree: return "ZeroDegree";
    case ErrorCode::InconsistentMatching: return "InconsistentMatching";
    case ErrorCode::NotTwoRegularRight: return "NotTwoRegularRight";
    case ErrorCode::ExcludedRegime: return "ExcludedRegime";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotSupercritical: return "NotSupercritical";
    case ErrorCode::DomainHorizon: return "DomainHorizon";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace rigc
