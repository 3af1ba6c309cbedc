#pragma once

#include <stdexcept>
#include <string>

namespace hopper {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// The points given to hyperplane_through do not determine a unique hyperplane.
class AffinelyDependent : public Error {
 public:
  using Error::Error;
};

/// Input violates the polytope invariants (rank deficient, redundant rows, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class Disconnected : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class NotPrismatoid : public Error {
 public:
  using Error::Error;
};

class DegenerateDeck : public Error {
 public:
  using Error::Error;
};

class NonGenericFunctional : public Error {
 public:
  using Error::Error;
};

/// A while-loop fuse (iteration count or timeout) tripped.
class FuseTripped : public Error {
 public:
  using Error::Error;
};

class NoRegionFound : public Error {
 public:
  using Error::Error;
};

class MissingMetric : public Error {
 public:
  using Error::Error;
};

class SeedingFailed : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hopper
