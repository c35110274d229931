#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fmlinv {

enum class ErrorCode {
  IrrationalEigenvalues,
  RepeatedEigenvalues,
  NotStable,
  NotSemisimple,
  NotCritical,
  NotStronglyCritical,
  WrongMonodromyRank,
  WeightsNotStrict,
  NoRationalEigenvector,
  NonIntegerWeight,
  NoJumpLine,
  PrimeMismatch,
  LengthMismatch,
  MissingLInvariant,
  IndexOutOfRange,
  InvalidDecomposition,
  InvalidInput,
};

inline const char* to_string(ErrorCode code);

// Failure of a domain precondition. `index` carries the offending 1-based
// index where one exists (unstable flag step, non-critical s, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& detail, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), index_(index) {}

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> index() const { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IrrationalEigenvalues: return "IrrationalEigenvalues";
    case ErrorCode::RepeatedEigenvalues: return "RepeatedEigenvalues";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::NotStronglyCritical: return "NotStronglyCritical";
    case ErrorCode::WrongMonodromyRank: return "WrongMonodromyRank";
    case ErrorCode::WeightsNotStrict: return "WeightsNotStrict";
    case ErrorCode::NoRationalEigenvector: return "NoRationalEigenvector";
    case ErrorCode::NonIntegerWeight: return "NonIntegerWeight";
    case ErrorCode::NoJumpLine: return "NoJumpLine";
    case ErrorCode::PrimeMismatch: return "PrimeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingLInvariant: return "MissingLInvariant";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace fmlinv
