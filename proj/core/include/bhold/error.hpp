#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bhold {

enum class ErrorCode {
  InvalidParams,
  DegenerateDenominator,
  EmptyInterval,
  OutsideSupport,
  NonPositiveXn,
  LemmaHypothesisViolated,
  UnknownRegion,
  NegativeEigenvalue,
  KOutOfRange,
  ZeroDenominator,
  BoundaryPoint,
  InsufficientSamples,
  NonConvexDomain,
  RegimeMismatch,
  NonPositiveConstant,
  EmptyRegion,
  NotOnBoundary,
  NoCertificate,
  RangeMismatch,
  OutsideV,
  NonConvexSamples,
  ParamOrderViolated,
  SignConditionViolated,
  SearchExhausted,
  LidNotNegative,
  NonConvergence,
  SingularRhs,
  OutsideMask,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bhold
