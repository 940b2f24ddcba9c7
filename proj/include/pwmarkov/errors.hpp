#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwm {

// Mirrors pwm_status in pwmarkov.h; keep the numeric values in sync.
enum class ErrorCode {
  domain = 1,
  integer_hit = 2,
  admissibility = 3,
  spec = 4,
  precondition = 5,
  precision = 6,
  unsupported = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Argument outside the domain of an operation (negative ℓ input, missing branch index, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

/// The orbit reached an integer at `step()`; the symbolic theory stops there.
class IntegerHit : public Error {
 public:
  IntegerHit(std::size_t step, const std::string& value)
      : Error(ErrorCode::integer_hit,
              "orbit reaches the integer " + value + " at step " + std::to_string(step)),
        step_(step),
        value_(value) {}
  std::size_t step() const noexcept { return step_; }
  const std::string& value() const noexcept { return value_; }

 private:
  std::size_t step_;
  std::string value_;
};

/// A symbol word whose consecutive pair at `position()` is not realizable.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(std::size_t position, const std::string& what)
      : Error(ErrorCode::admissibility, what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Malformed input: bad system file, bad rational literal, violated digit bound, ...
class SpecError : public Error {
 public:
  explicit SpecError(const std::string& what) : Error(ErrorCode::spec, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorCode::precondition, what) {}
};

class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(ErrorCode::precision, what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(ErrorCode::unsupported, what) {}
};

}  // namespace pwm
