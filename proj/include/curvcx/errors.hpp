#pragma once

#include <stdexcept>

namespace curvcx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw cell lists that do not describe a polygonal complex.
class InvalidComplexError : public Error {
 public:
  using Error::Error;
};

/// A query needed the neighbourhood of a cell that was cut off by truncation.
class IncompleteCellError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvcx
