#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ans {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: mismatched alphabets, unknown symbols,
/// out-of-range states, broken invariants of a value being constructed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text-format parse failure. Carries the source name and 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// A well-formed request whose answer does not exist in the domain:
/// a word outside L, a non-partition of L, an exhausted exploration bound.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotInLanguage : public DomainError {
 public:
  using DomainError::DomainError;
};

class FiniteLanguage : public DomainError {
 public:
  using DomainError::DomainError;
};

class FiberPartitionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BoundExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace ans
