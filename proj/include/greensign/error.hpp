#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace greensign {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Arithmetic outside a function's domain (log of non-positive, 1/0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid problem description, index sets or space construction.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the admissible range (e.g. t outside [a,b]).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Integration state exceeded the overflow guard.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A linear system that must be regular is singular (e.g. M is an eigenvalue).
class SingularError : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue search exhausted its range without a sign change.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Some leading principal Wronskian became non-positive.
class DisconjugacyError : public Error {
 public:
  using Error::Error;
};

}  // namespace greensign
