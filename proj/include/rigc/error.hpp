#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigc {

enum class ErrorCode {
  EmptySupport,
  NotNormalized,
  NegativeWeight,
  ZeroMean,
  SupportContainsZero,
  OutOfDomain,
  OutOfRange,
  TooLargeForExactIsomorphism,
  TooManyEdges,
  InvalidGraph,
  DuplicateCommunity,
  HalfEdgeMismatch,
  ZeroDegree,
  InconsistentMatching,
  NotTwoRegularRight,
  ExcludedRegime,
  NonConvergence,
  NotSupercritical,
  DomainHorizon,
  EmptyGrid,
  KeyMismatch,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; every library failure is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rigc
