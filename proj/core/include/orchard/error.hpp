#pragma once

#include <stdexcept>
#include <string>

namespace orchard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A giant-tour token sequence that does not cover each task exactly once.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the size an exact routine is willing to enumerate.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A task whose yield cannot fit into an empty robot.
class InfeasibleTaskError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance text. Carries the offending line and field.
class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + field + ": " + what),
        line_(line),
        field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace orchard
