#pragma once

#include <stdexcept>
#include <string>

namespace equid {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial, sector or test-function text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation needed a nonzero polynomial.
class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

/// An operation needed degree >= 1.
class DegreeZero : public Error {
 public:
  using Error::Error;
};

/// Iterative refinement or quadrature hit its cap before reaching tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// a_0 = 0 where the Erdos-Turan bound needs it nonzero.
class ZeroCoefficient : public Error {
 public:
  using Error::Error;
};

/// An inequality hypothesis (degree threshold, simple zeros, class membership) failed.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// The energy term under the square root of the main inequality is negative.
class InfeasibleRadius : public Error {
 public:
  using Error::Error;
};

/// Discriminant vanished where a nonzero one is required.
class DiscriminantZero : public Error {
 public:
  using Error::Error;
};

/// Potential or energy evaluated on top of a point mass.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

/// A family generator cannot hit the requested degree.
class InfeasibleDegree : public Error {
 public:
  using Error::Error;
};

}  // namespace equid
