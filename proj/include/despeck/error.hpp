#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace despeck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed image file. Carries the byte offset where decoding failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Operand shapes that do not agree (or an empty image where one is required).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation (negative pixel
/// before a log, zero variance in a ratio, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result would not be finite.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or argument.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace despeck
