#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deltafpt {

// Typed failures carry a machine-readable kind; the CLI maps kinds to exit
// codes. Solver outcomes such as "infeasible" are statuses, not exceptions.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

class RankError : public Error {
 public:
  RankError(const std::string& what, std::vector<std::size_t> dependentColumns)
      : Error("rank", what), columns_(std::move(dependentColumns)) {}
  const std::vector<std::size_t>& dependentColumns() const { return columns_; }

 private:
  std::vector<std::size_t> columns_;
};

class SingularError : public Error {
 public:
  explicit SingularError(const std::string& what) : Error("singular", what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error("contract", what) {}
};

class NotASimplexError : public Error {
 public:
  explicit NotASimplexError(const std::string& what) : Error("not-a-simplex", what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : Error("parse", what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class TableLimitError : public Error {
 public:
  explicit TableLimitError(const std::string& what) : Error("table-too-large", what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error("internal", what) {}
};

}  // namespace deltafpt
