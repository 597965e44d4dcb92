#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaugekit {

// Malformed expression source. `offset` is the byte offset of the failure.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_function, coordinate_index };

  ParseError(Kind kind, const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// An expression references a parameter that is not in the ParamSet.
class MissingParameterError : public std::runtime_error {
 public:
  explicit MissingParameterError(const std::string& name)
      : std::runtime_error("undefined parameter: " + name), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Evaluation produced a non-finite value (division by zero, sqrt of a
// negative number, overflow) or entered a declared singular region.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gaugekit
