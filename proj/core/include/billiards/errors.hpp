#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver failed to meet its tolerance. Carries the best
/// residual reached so callers can report or relax.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Malformed specification input (body/field/patch files). `field()` names
/// the offending key.
class SpecError : public Error {
 public:
  SpecError(const std::string& what, std::string field)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Geometric precondition violated (zero vector, point off the boundary,
/// transversality failure, chord escaping a patch, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace billiards
