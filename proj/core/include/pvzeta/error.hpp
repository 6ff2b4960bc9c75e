#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pvzeta {

enum class ErrorCode {
  InvalidArgument,
  InsufficientCoefficients,
  NoFit,
  HoldoutMismatch,
  NonInvertibleElement,
  SamplingExhausted,
  WrongSpace,
  BoundaryPoint,
  FieldRequired,
  ConstraintViolated,
  BudgetExceeded,
  PrecisionOverflow,
  EmptySample,
  EmptyTestFunction,
  InconsistentGamma,
  RankDeficient,
  ConvergenceRangeViolated,
  MaxEvalsExceeded,
  ChecksumMismatch,
  UnsupportedSchema,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI maps to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by zeta_from_census when a reconstructed series disagrees with a
/// held-out census coefficient.
class HoldoutMismatch : public Error {
 public:
  HoldoutMismatch(int index, const std::string& what)
      : Error(ErrorCode::HoldoutMismatch, what), index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace pvzeta
