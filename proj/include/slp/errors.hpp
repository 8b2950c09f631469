#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slp {

/// Base for every input validation failure (graph structure, label sets).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public ValidationError {
 public:
  enum class Kind {
    TooFewNodes,
    NodeOutOfRange,
    SelfLoop,
    NonPositiveWeight,
    DuplicateEdge,
    DisconnectedGraph,
  };

  GraphError(Kind kind, const std::string& what)
      : ValidationError(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class LabelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operand length does not match the graph it is applied on.
class SizeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonFiniteIterate : public std::runtime_error {
 public:
  NonFiniteIterate(std::size_t iteration, const std::string& what)
      : std::runtime_error(what), iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slp
