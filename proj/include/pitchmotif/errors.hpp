#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pitchmotif {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input file does not follow the documented schema. `record` is the 1-based
// line number for CSV input and the 0-based array index for JSON input.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t record, const std::string& what)
      : Error("record " + std::to_string(record) + ": " + what), record_(record) {}
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

class ValueError : public Error {
 public:
  ValueError(std::size_t record, const std::string& what)
      : Error("record " + std::to_string(record) + ": " + what), record_(record) {}
  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

class OutOfFieldError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when a produced result breaks one of its structural guarantees.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace pitchmotif
