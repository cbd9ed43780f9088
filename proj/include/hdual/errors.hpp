#pragma once

#include <stdexcept>
#include <string>

namespace hdual {

/// Base class for domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The expansiveness test could not reach a decision within its iteration cap.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or iteration would exceed a configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two digit words produced the same point of a Γ level.
class DuplicatePointError : public Error {
 public:
  using Error::Error;
};

/// A counting window reaches beyond what the supplied Γ level covers.
class LevelInsufficient : public Error {
 public:
  LevelInsufficient(const std::string& what, int required)
      : Error(what), required_level(required) {}
  int required_level;
};

/// Internal consistency check failed; indicates a bug rather than bad input.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace hdual
