#pragma once

#include <stdexcept>
#include <string>

namespace hamcoh {

// Base for everything the engine throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-facing configuration (bad family, non-prime modulus, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A bracket left the span of the algebra basis, or a boundary term left its box.
class ClosureError : public Error {
 public:
  using Error::Error;
};

// Elimination exceeded the configured memory budget. The box can be retried.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A structural or proposition check failed where the engine depends on it.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// The computation was interrupted; everything finished so far is journaled.
class Cancelled : public Error {
 public:
  using Error::Error;
};

}  // namespace hamcoh
