#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epifir {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition on the input data does not hold.
struct InvalidInput : Error {
  using Error::Error;
};

/// Two containers that must agree in length do not.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Rate extraction hit a day with no infected individuals.
struct ZeroInfected : Error {
  explicit ZeroInfected(std::size_t day)
      : Error("no infected individuals at day " + std::to_string(day) +
              "; rates are undefined"),
        day(day) {}
  std::size_t day;
};

/// The susceptible fraction 1 - i - r fell below the guard threshold.
struct DepletedSusceptible : Error {
  explicit DepletedSusceptible(std::size_t day)
      : Error("susceptible fraction depleted at day " + std::to_string(day)),
        day(day) {}
  std::size_t day;
};

/// A FIR filter order is incompatible with the available history.
struct OrderOutOfRange : Error {
  using Error::Error;
};

/// The SVD iteration did not converge within the sweep cap.
struct NonConvergence : Error {
  using Error::Error;
};

/// The reference series of a relative error is identically zero.
struct ZeroDenominator : Error {
  using Error::Error;
};

}  // namespace epifir
