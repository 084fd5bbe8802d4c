#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace supermech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// graded_algebra
class UndeclaredGenerator : public Error {
 public:
  using Error::Error;
};
class MixedParity : public Error {
 public:
  using Error::Error;
};
class ZeroExpression : public Error {
 public:
  using Error::Error;
};
class ParityMismatch : public Error {
 public:
  using Error::Error;
};

// jet_geometry / graded_forms
class OrderExceeded : public Error {
 public:
  using Error::Error;
};
class DomainMismatch : public Error {
 public:
  using Error::Error;
};
class NotSemibasic : public Error {
 public:
  NotSemibasic(const std::string& what, int base, bool odd, int order)
      : Error(what), base(base), odd(odd), order(order) {}
  int base;
  bool odd;
  int order;
};

// lagrangian pipeline
class NotRegular : public Error {
 public:
  using Error::Error;
};
class SingularSystem : public Error {
 public:
  using Error::Error;
};
class NoWitness : public Error {
 public:
  using Error::Error;
};
class NotProjectable : public Error {
 public:
  using Error::Error;
};

// grassmann_numeric
class MissingValue : public Error {
 public:
  using Error::Error;
};
class ParityViolation : public Error {
 public:
  using Error::Error;
};
class NumericBreakdown : public Error {
 public:
  using Error::Error;
};

// Problem-file diagnostics carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};
class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};
class UnknownCoordinate : public ParseError {
 public:
  using ParseError::ParseError;
};
class IndexOutOfRange : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace supermech
