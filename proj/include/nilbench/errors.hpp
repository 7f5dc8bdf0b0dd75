#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilbench {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define NILBENCH_ERROR(Name)            \
  class Name : public Error {           \
  public:                               \
    using Error::Error;                 \
  };

NILBENCH_ERROR(CapExceeded)
NILBENCH_ERROR(DegreeMismatch)
NILBENCH_ERROR(NotRegular)
NILBENCH_ERROR(NotAGroup)
NILBENCH_ERROR(NotInverseSquare)
NILBENCH_ERROR(InconsistentPattern)
NILBENCH_ERROR(BudgetExceeded)
NILBENCH_ERROR(NotPrime)
NILBENCH_ERROR(BadParameter)
NILBENCH_ERROR(InvalidDelta)
NILBENCH_ERROR(NotInverse)
NILBENCH_ERROR(MalformedRees)
NILBENCH_ERROR(SemanticError)
NILBENCH_ERROR(InternalInconsistency)

#undef NILBENCH_ERROR

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nilbench
