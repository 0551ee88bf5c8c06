#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussbounds {

enum class ErrorKind {
  NotPositiveDefinite,
  IndexOutOfRange,
  DegeneratePair,
  DimensionMismatch,
  InvalidPermutation,
  UnsupportedElectronCount,
  DegenerateChannel,
  QuadratureFailure,
  DomainError,
  NonFiniteSample,
  DegenerateMarginal,
  OverlapNotPositiveDefinite,
  ZeroVector,
  NegativeVariance,
  BetaNotAboveE,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::UnsupportedElectronCount: return "UnsupportedElectronCount";
    case ErrorKind::DegenerateChannel: return "DegenerateChannel";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::DegenerateMarginal: return "DegenerateMarginal";
    case ErrorKind::OverlapNotPositiveDefinite: return "OverlapNotPositiveDefinite";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NegativeVariance: return "NegativeVariance";
    case ErrorKind::BetaNotAboveE: return "BetaNotAboveE";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// front ends can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the Gram matrix of a basis is not positive definite. `row` is the
/// first basis index at which the Cholesky factorization broke down.
class OverlapError : public Error {
 public:
  OverlapError(long row, const std::string& what)
      : Error(ErrorKind::OverlapNotPositiveDefinite, what), row_(row) {}
  long row() const noexcept { return row_; }

 private:
  long row_;
};

}  // namespace gaussbounds
