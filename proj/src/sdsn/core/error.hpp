#pragma once

#include <stdexcept>
#include <string>

namespace sdsn {

/// Invalid configuration or topology description. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Failure while executing a well-formed request. Maps to exit code 2.
class RuntimeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Stored report does not match a recomputation from raw logs. Exit code 3.
class IntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV input; the message names the offending line.
class ParseError : public RuntimeError {
public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : RuntimeError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

}  // namespace sdsn
