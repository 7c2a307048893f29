#pragma once

#include <stdexcept>
#include <string>

namespace stieltjes {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Schur complement d - v' A^{-1} v is not positive in a bordered inverse.
class SchurNotPositive : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Exhaustive routine refused because 2^n (or n!) work would be excessive.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Linear term has strictly mixed signs where a uniform sign is required.
class SignMixed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : Error("parse error in '" + field + "': " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace stieltjes
