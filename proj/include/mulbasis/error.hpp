#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mulbasis {

// Base of every error raised by the library. The C API maps each subclass to
// a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A request exceeds a configured memory or size budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Factorization hit a prime factor above the sieve limit. The unfactored part
// is kept so the caller can decide what to do with it.
class IncompleteTableError : public Error {
 public:
  IncompleteTableError(std::uint64_t value, std::uint64_t cofactor, std::uint64_t limit)
      : Error("factorization of " + std::to_string(value) + " left cofactor " +
              std::to_string(cofactor) + " above table limit " + std::to_string(limit)),
        cofactor_(cofactor) {}

  std::uint64_t cofactor() const { return cofactor_; }

 private:
  std::uint64_t cofactor_;
};

// A step that is guaranteed to succeed did not. Always an implementation bug
// or a corrupted input that slipped past validation.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace mulbasis
