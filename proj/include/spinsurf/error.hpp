#ifndef SPINSURF_ERROR_HPP
#define SPINSURF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spinsurf {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidSpinElement,
  DegenerateParametrization,
  LiftDiscontinuity,
  VanishingSpinor,
  NormViolation,
  BudgetExceeded,
  Parse,
  Pole,
  PreconditionFailed,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax or semantic error in an expression, with the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace spinsurf

#endif  // SPINSURF_ERROR_HPP
