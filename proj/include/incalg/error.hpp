#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace incalg {

enum class ErrorKind {
  // poset construction
  DuplicateLabel,
  UnknownLabel,
  InvalidLabel,
  CycleDetected,
  NotConnected,
  RedundantCover,
  TrivialPoset,
  // fields and scalars
  NotPrime,
  DivisionByZero,
  ParseError,
  // algebra
  MismatchedContext,
  NotDiagonal,
  NotStrictlyComparable,
  // analysis
  NotCommPreserver,
  NotPureDecomposable,
  ThetaNotBijective,
  ZeroC,
  BruteForceInfeasible,
  // structure
  InconsistentTriples,
  NotTransported,
  NotDiagonalValued,
  InvalidAlpha,
  // synthesis
  PreconditionFailed,
  WellDefinednessViolation,
  HypothesesNotMet,
  // io
  SchemaError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::RedundantCover: return "RedundantCover";
    case ErrorKind::TrivialPoset: return "TrivialPoset";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MismatchedContext: return "MismatchedContext";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::NotStrictlyComparable: return "NotStrictlyComparable";
    case ErrorKind::NotCommPreserver: return "NotCommPreserver";
    case ErrorKind::NotPureDecomposable: return "NotPureDecomposable";
    case ErrorKind::ThetaNotBijective: return "ThetaNotBijective";
    case ErrorKind::ZeroC: return "ZeroC";
    case ErrorKind::BruteForceInfeasible: return "BruteForceInfeasible";
    case ErrorKind::InconsistentTriples: return "InconsistentTriples";
    case ErrorKind::NotTransported: return "NotTransported";
    case ErrorKind::NotDiagonalValued: return "NotDiagonalValued";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::WellDefinednessViolation: return "WellDefinednessViolation";
    case ErrorKind::HypothesesNotMet: return "HypothesesNotMet";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

/// Errors raised by the library. `kind()` is stable and machine readable;
/// the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

  /// True for errors caused by malformed input rather than a false verdict.
  bool is_input_error() const noexcept {
    switch (kind_) {
      case ErrorKind::DuplicateLabel:
      case ErrorKind::UnknownLabel:
      case ErrorKind::InvalidLabel:
      case ErrorKind::CycleDetected:
      case ErrorKind::NotConnected:
      case ErrorKind::RedundantCover:
      case ErrorKind::TrivialPoset:
      case ErrorKind::NotPrime:
      case ErrorKind::ParseError:
      case ErrorKind::MismatchedContext:
      case ErrorKind::SchemaError:
      case ErrorKind::NotDiagonalValued:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace incalg
