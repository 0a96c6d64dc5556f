#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace manet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchedulingInPast : public Error {
 public:
  using Error::Error;
};

class OutOfTraceRange : public Error {
 public:
  using Error::Error;
};

class DegenerateEdge : public Error {
 public:
  using Error::Error;
};

class DuplicateDelivery : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario text. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed scenario whose value for `field()` is out of range.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace manet
