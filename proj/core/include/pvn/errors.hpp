#pragma once

#include <stdexcept>
#include <string>

namespace pvn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated. `field()` names the argument.
class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class LatticeMismatch : public Error {
 public:
  LatticeMismatch(long long lattice_cells, long long grid_points);
  long long lattice_cells() const noexcept { return lattice_cells_; }
  long long grid_points() const noexcept { return grid_points_; }

 private:
  long long lattice_cells_;
  long long grid_points_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The potential is singular at a requested point (Coulomb at x = 0 without softening).
class SingularPotential : public Error {
 public:
  SingularPotential(const std::string& what, long grid_index = -1, double x = 0.0)
      : Error(what), grid_index_(grid_index), x_(x) {}
  long grid_index() const noexcept { return grid_index_; }
  double x() const noexcept { return x_; }

 private:
  long grid_index_;
  double x_;
};

/// Request outside the domain of an analytic formula, e.g. more Morse levels than are bound.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotImplemented : public Error {
 public:
  using Error::Error;
};

class EmptyBasis : public Error {
 public:
  using Error::Error;
};

/// Eigensolver or factorization failure.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class IllConditionedOverlap : public NumericalFailure {
 public:
  IllConditionedOverlap(const std::string& what, double condition)
      : NumericalFailure(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace pvn
