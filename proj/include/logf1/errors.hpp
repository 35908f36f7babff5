#pragma once

#include <stdexcept>
#include <string>

namespace logf1 {

// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, wrong schema, non-primitive rays.
class InputError : public Error {
 public:
  using Error::Error;
};

// Well-formed input on which the requested operation is undefined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A postcondition the library itself should guarantee was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Enumeration or search ran out of its node budget.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace logf1
