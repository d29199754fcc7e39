#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

// Bad argument values detectable by inspection (shapes, ranges, NaN inputs,
// mismatched basis references). Maps to exit code 2 in the CLI.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mathematically undefined or non-integrable configuration: Gamma poles hit
// head-on, weight exponents that make an integral diverge, parameters outside
// the supported analytic range. Maps to exit code 3 in the CLI.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request exceeds a documented capability limit (monomial-expansion degree
// cap, maximum quadrature depth). The message names the limit and, where one
// exists, the alternative route.
class CapabilityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Not enough usable data points for a statistical operation (decay fitting).
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracspec
