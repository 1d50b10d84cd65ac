#include "bhold/error.hpp"

namespace bhold {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::NonPositiveXn: return "NonPositiveXn";
    case ErrorCode::LemmaHypothesisViolated: return "LemmaHypothesisViolated";
    case ErrorCode::UnknownRegion: return "UnknownRegion";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonConvexDomain: return "NonConvexDomain";
    case ErrorCode::RegimeMismatch: return "RegimeMismatch";
    case ErrorCode::NonPositiveConstant: return "NonPositiveConstant";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::NoCertificate: return "NoCertificate";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::OutsideV: return "OutsideV";
    case ErrorCode::NonConvexSamples: return "NonConvexSamples";
    case ErrorCode::ParamOrderViolated: return "ParamOrderViolated";
    case ErrorCode::SignConditionViolated: return "SignConditionViolated";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::LidNotNegative: return "LidNotNegative";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularRhs: return "SingularRhs";
    case ErrorCode::OutsideMask: return "OutsideMask";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace bhold
