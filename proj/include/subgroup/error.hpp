#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subgroup {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: configuration values, flags, missing files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data that cannot be processed (malformed files, degenerate corpora).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed transcript or table line. `line()` is 1-based; 0 when unknown.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : DataError(line == 0 ? message
                            : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by the pipeline; carries the failing stage name.
class StageError : public Error {
 public:
  enum class Kind { kConfig, kData, kInternal };

  StageError(std::string stage, Kind kind, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)), kind_(kind) {}

  const std::string& stage() const noexcept { return stage_; }
  Kind kind() const noexcept { return kind_; }

 private:
  std::string stage_;
  Kind kind_;
};

}  // namespace subgroup
