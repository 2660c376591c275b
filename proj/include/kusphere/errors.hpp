#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kusphere {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition failures on caller-supplied values (non-prime q, ell not
// coprime, non-primitive ell, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A configured size bound was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Ingested data violates its schema or invariants.
class DataError : public Error {
 public:
  using Error::Error;
};

// A map handed to induced_quotient_map does not descend to the quotients.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Two independent computations disagreed. Never expected in practice.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace kusphere
