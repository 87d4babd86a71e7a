#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradecert {

enum class ErrorKind {
  FieldMismatch,
  ShapeMismatch,
  DivisionByZero,
  Parse,
  NonAssociative,
  GradingViolation,
  BadUnit,
  BadIdempotents,
  NotFiniteDimensional,
  RadicalUnavailable,
  NotSplit,
  IdempotentsRequired,
  NotQuasiHereditary,
  A0NotQuasiHereditary,
  TightnessRequired,
  NotIdempotent,
  NotFull,
  NotGradeZero,
  UncertifiedAtRadius,
  ConventionMismatch,
  ElementNotInPoset,
  IntervalEscapesBall,
  InvalidArgument,
  Internal,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the toolkit; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace gradecert
