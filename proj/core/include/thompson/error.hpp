#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thompson {

/// Base of every domain failure raised by the library. The CLI maps these to
/// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was not met (wrong range, wrong slope class, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Operands built over different GroupContexts.
class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("group context mismatch") {}
};

/// A value that must lie in Z[1/n] does not.
class NotInRing : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed; offset() is a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace thompson
