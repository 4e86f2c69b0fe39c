#pragma once

#include <stdexcept>
#include <string>

namespace gpsim {

/// Base for every failure raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Input outside the mathematical domain of an operation (a <= 0, m0 < mf, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Parabolic, hyperbolic or rectilinear orbit where an ellipse is required.
class UnsupportedOrbitError : public Error {
 public:
  explicit UnsupportedOrbitError(const std::string& what)
      : Error("unsupported_orbit", what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what) : Error("singularity", what) {}
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& what) : Error("configuration", what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

/// Integration produced or consumed a non-finite value at time `t`.
class IntegrationError : public Error {
 public:
  IntegrationError(double t, const std::string& what)
      : Error("integration", what + " at t=" + std::to_string(t) + " s"), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Trajectory reached the planet surface.
class ImpactError : public Error {
 public:
  explicit ImpactError(double t)
      : Error("impact", "trajectory impacts the surface at t=" + std::to_string(t) + " s"),
        t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Linearized correction requested outside its validity region.
class OutOfRangeError : public Error {
 public:
  explicit OutOfRangeError(const std::string& what) : Error("out_of_range", what) {}
};

class FuelDepletedError : public Error {
 public:
  FuelDepletedError(double required_kg, double available_kg)
      : Error("fuel_depleted",
              "maneuver needs " + std::to_string(required_kg) + " kg, only " +
                  std::to_string(available_kg) + " kg remain"),
        required_(required_kg),
        available_(available_kg) {}
  double required() const noexcept { return required_; }
  double available() const noexcept { return available_; }

 private:
  double required_;
  double available_;
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error("data", what) {}
};

/// Riccati iteration failed to converge; carries the final residual norm.
class SynthesisError : public Error {
 public:
  SynthesisError(double residual, const std::string& what)
      : Error("synthesis", what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Scenario file could not be parsed or failed validation. `field` is the
/// JSON path of the offending entry (empty for syntax errors).
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : Error("scenario", field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace gpsim
