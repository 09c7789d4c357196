#ifndef FLATNORM_ERROR_HPP
#define FLATNORM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatnorm {

enum class ErrorCode {
  NonTriangleFace,
  UnpairedHalfEdge,
  TriangleNotClosed,
  EdgeVectorMismatch,
  NegativeOrientation,
  BadConeAngle,
  Disconnected,
  ZeroScale,
  DegenerateTriangle,
  FlipLimitExceeded,
  BudgetExceeded,
  CochainMismatch,
  NotTranslation,
  RankMismatch,
  NegativePairing,
  AlreadySquare,
  DegenerateAtT,
  BadEpsilon,
  NoSuchCylinder,
  ParseError,
  UsageError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTriangleFace: return "NonTriangleFace";
    case ErrorCode::UnpairedHalfEdge: return "UnpairedHalfEdge";
    case ErrorCode::TriangleNotClosed: return "TriangleNotClosed";
    case ErrorCode::EdgeVectorMismatch: return "EdgeVectorMismatch";
    case ErrorCode::NegativeOrientation: return "NegativeOrientation";
    case ErrorCode::BadConeAngle: return "BadConeAngle";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::FlipLimitExceeded: return "FlipLimitExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CochainMismatch: return "CochainMismatch";
    case ErrorCode::NotTranslation: return "NotTranslation";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NegativePairing: return "NegativePairing";
    case ErrorCode::AlreadySquare: return "AlreadySquare";
    case ErrorCode::DegenerateAtT: return "DegenerateAtT";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::NoSuchCylinder: return "NoSuchCylinder";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class FlatError : public std::runtime_error {
 public:
  FlatError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace flatnorm

#endif  // FLATNORM_ERROR_HPP
