#pragma once

#include <stdexcept>
#include <string>

namespace finitude {

/// Every failure the library reports maps to exactly one of these codes.
/// The numeric values are part of the C API (see finitude.h) and must not
/// be reordered.
enum class ErrorCode : int {
  Ok = 0,
  SyntaxError = 1,
  UndeclaredVariable = 2,
  NonPolynomialExponent = 3,
  ZeroPolynomial = 4,
  DegreeTooLow = 5,
  IterationLimitExceeded = 6,
  NonExactCenter = 7,
  OrderTooSmall = 8,
  NumericBreakdown = 9,
  SquareFreeRequired = 10,
  BasePointTooClose = 11,
  PathCollision = 12,
  SingularOnPath = 13,
  DegreeTooLarge = 14,
  SearchBudgetExceeded = 15,
  NotTransitive = 16,
  NotApplicable = 17,
  ReducibleInput = 18,
  UnsupportedGroup = 19,
  RationalizationFailed = 20,
  OrderTooLarge = 21,
  NotHomogeneous = 22,
  NoneFound = 23,
  BoundExceeded = 24,
  StepSizeUnderflow = 25,
  ToleranceAmbiguous = 26,
  InvalidArgument = 27,
  IrrationalPole = 28,
  DivisionByZero = 29,
  IoError = 30,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parser failures carry the 0-based character offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error(ErrorCode::SyntaxError,
              "syntax error at position " + std::to_string(position) +
                  ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace finitude
