#pragma once

#include <stdexcept>
#include <string>

namespace rigclust {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment E Z^r was requested that does not exist for the law.
class InfiniteMomentError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested accuracy.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what + " (achieved error bound " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Malformed input data (edge lists, config files, CSV).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Projection exceeded its configured edge budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace rigclust
