#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jobgraph {

/// Coarse error classes; the CLI maps these onto its exit codes.
enum class ErrorCategory {
  Usage,        // bad configuration or command line
  Input,        // unreadable or malformed input data
  Consistency,  // numeric failures and violated cross-module contracts
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Malformed line in a line-oriented input. `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCategory::Input, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

/// Embedding / edge-list file does not match its declared layout.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error(ErrorCategory::Input, "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::Usage, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::Consistency, what) {}
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error(ErrorCategory::Consistency, what) {}
};

/// Not enough candidates to draw the requested sample.
class SamplingError : public Error {
 public:
  explicit SamplingError(const std::string& what) : Error(ErrorCategory::Consistency, what) {}
};

}  // namespace jobgraph
