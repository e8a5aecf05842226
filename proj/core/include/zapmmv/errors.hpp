#pragma once

#include <stdexcept>
#include <string>

namespace zapmmv {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between operands; the message names both shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Rejected input value: non-finite entry, bad parameter, empty aggregate.
class ValueError : public Error {
 public:
  using Error::Error;
};

/// AA^T is numerically rank-deficient or its condition estimate exceeds the limit.
class SingularGramError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared in a solver iterate; the message names the iteration.
class NumericalDivergenceError : public Error {
 public:
  using Error::Error;
};

/// Greedy selection accumulated a rank-deficient support submatrix.
class DegenerateSupportError : public Error {
 public:
  using Error::Error;
};

/// Combinatorial guard exceeded; oracles refuse rather than truncate.
class OracleGuardError : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written, or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace zapmmv
