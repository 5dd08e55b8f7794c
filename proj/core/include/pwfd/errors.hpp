#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace pwfd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid inputs: bad grid, negative thickness, stencil outside the grid.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised by dispersion queries that have no real positive numerical wavenumber.
class DispersionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what,
                          double residual = std::numeric_limits<double>::quiet_NaN())
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace pwfd
