#pragma once

#include <stdexcept>
#include <string>

namespace levywh {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class LevyError : public std::runtime_error {
 public:
  LevyError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Invalid model parameters; `field()` names the offending parameter.
class ParameterError : public LevyError {
 public:
  ParameterError(std::string field, const std::string& what)
      : LevyError("parameter", what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the analyticity domain (on a cut, at a pole, inside the strip
/// where a cut value was requested, ...).
class DomainError : public LevyError {
 public:
  explicit DomainError(const std::string& what) : LevyError("domain", what) {}
};

class QuadratureError : public LevyError {
 public:
  QuadratureError(const std::string& what, double achieved)
      : LevyError("quadrature", what), achieved_(achieved) {}
  double achieved_error() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// No admissible integration contour, or a branch/winding failure along one.
class ContourError : public LevyError {
 public:
  explicit ContourError(const std::string& what) : LevyError("contour", what) {}
};

class ConvergenceError : public LevyError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : LevyError("convergence", what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Operation called in the wrong long-horizon regime (sign of the first moment).
class RegimeError : public LevyError {
 public:
  explicit RegimeError(const std::string& what) : LevyError("regime", what) {}
};

/// Model lacks a structural property an operation needs (SL form, Case (a)
/// asymptotics, simple zeros, ...).
class UnsupportedError : public LevyError {
 public:
  explicit UnsupportedError(const std::string& what) : LevyError("unsupported", what) {}
};

class SanityError : public LevyError {
 public:
  explicit SanityError(const std::string& what) : LevyError("sanity", what) {}
};

}  // namespace levywh
