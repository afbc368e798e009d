#pragma once

#include <stdexcept>
#include <string>

namespace pcurv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violated a documented precondition or type invariant.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Requested precision does not determine the answer.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Elimination over k[eps] met a non-principal ideal.
class NormalFormError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcurv
