#pragma once

#include <stdexcept>
#include <string>

namespace af {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Density or pressure fell below the admissibility floor.
class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

class CflExceeded : public Error {
 public:
  using Error::Error;
};

// Power-law data with the average sitting on an endpoint.
class DegenerateData : public Error {
 public:
  using Error::Error;
};

// The average constraint is not independent of the point constraints
// (symmetric node sets with an odd count).
class SingularAverageConstraint : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

// Unknown names, out-of-range orders, malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace af
