#pragma once

#include <stdexcept>
#include <string>

namespace toricdef {

enum class ErrorCode {
  ZeroVector,
  RankMismatch,
  EmptyInput,
  NotIntegral,
  UnboundedBelow,
  Unbounded,
  NotFullDimensional,
  NotStronglyConvex,
  NotInDualCone,
  InvalidDatum,
  StructureViolation,
  NegativeExponent,
  OriginNotInterior,
  NonPrimitiveVertex,
  NotFano,
  NoFactorAtHeight,
  RayPredictionMismatch,
  OutsideV,
  NotAmple,
  QDivisorBoundary,
  InvalidInput,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::UnboundedBelow: return "UnboundedBelow";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::NotInDualCone: return "NotInDualCone";
    case ErrorCode::InvalidDatum: return "InvalidDatum";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NonPrimitiveVertex: return "NonPrimitiveVertex";
    case ErrorCode::NotFano: return "NotFano";
    case ErrorCode::NoFactorAtHeight: return "NoFactorAtHeight";
    case ErrorCode::RayPredictionMismatch: return "RayPredictionMismatch";
    case ErrorCode::OutsideV: return "OutsideV";
    case ErrorCode::NotAmple: return "NotAmple";
    case ErrorCode::QDivisorBoundary: return "QDivisorBoundary";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toricdef
