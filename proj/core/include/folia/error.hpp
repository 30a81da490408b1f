#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace folia {

// Machine-readable error codes. Every library failure carries exactly one.
enum class ErrorCode {
  kIndexOutOfRange,
  kArityMismatch,
  kDivisionByZero,
  kExponentOverflow,
  kZeroInput,
  kDegreeZero,
  kParse,
  kNonHomogeneous,
  kUnequalDegrees,
  kDegenerateInput,
  kNotEuler,
  kNotIntegrable,
  kDegenerateLine,
  kInconsistentDegree,
  kZeroField,
  kCommonFactor,
  kDegenerateParameters,
  kSingularMatrix,
  kNonConvergence,
  kMultipleRootSuspected,
  kNonIsolatedSingularity,
  kDegenerateSingularity,
  kNotInvariant,
  kPointNotOnLine,
  kNotSingular,
  kHigherOrderPole,
  kEigenvectorTie,
  kCapExceeded,
  kNotFermatForm,
  kPointNotOnIndeterminacy,
  kNonIntegerCount,
  kInvalidMap,
  kRegimeViolation,
  kNotEigenform,
  kNotProportional,
  kNonzeroLinearPart,
  kProbeInconclusive,
  kInternal,
};

// Stable snake_case identifier used in reports.
std::string_view error_code_name(ErrorCode code);

// Numeric failures (root finding, probes) as opposed to violated identities.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorCode::kParse, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace folia
