#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fahp {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

// Dimensions or item lists that do not line up.
class ShapeError : public Error {
public:
  using Error::Error;
};

class DuplicatePairError : public Error {
public:
  using Error::Error;
};

// A judgment set that leaves some (i, j) pairs unanswered.
class IncompleteMatrixError : public Error {
public:
  IncompleteMatrixError(std::string message, std::vector<std::pair<std::size_t, std::size_t>> missing)
      : Error(std::move(message)), missing_(std::move(missing)) {}

  const std::vector<std::pair<std::size_t, std::size_t>>& missing() const noexcept { return missing_; }

private:
  std::vector<std::pair<std::size_t, std::size_t>> missing_;
};

// A comparison matrix failed the consistency-ratio gate.
class ConsistencyError : public Error {
public:
  ConsistencyError(std::string message, std::string node_id, double cr)
      : Error(std::move(message)), node_id_(std::move(node_id)), cr_(cr) {}

  const std::string& node_id() const noexcept { return node_id_; }
  double cr() const noexcept { return cr_; }

private:
  std::string node_id_;
  double cr_;
};

// factor * w_b >= 1: the boosted weight would swallow the whole budget.
class InfeasibleBoostError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : Error(std::move(message)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class VersionError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace fahp
