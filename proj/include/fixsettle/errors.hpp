#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fixsettle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the range where a formula or map is defined.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

/// A state argument is outside the domain of a condition (e.g. the origin).
class DomainError : public Error {
 public:
  using Error::Error;
};

class EmptyDomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateDomainError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A perturbation generator produced a sample violating its norm bound.
class SpecViolationError : public Error {
 public:
  using Error::Error;
};

/// An orbit left the representable range. `last_finite_index` is the last
/// step whose state was finite and within the divergence guard.
class SimulationDivergedError : public Error {
 public:
  SimulationDivergedError(const std::string& what, std::size_t last_finite_index)
      : Error(what), last_finite_index_(last_finite_index) {}

  [[nodiscard]] std::size_t last_finite_index() const noexcept { return last_finite_index_; }

 private:
  std::size_t last_finite_index_;
};

/// Input to the q-sequence construction breaks one of its hypotheses.
class LemmaPreconditionError : public Error {
 public:
  LemmaPreconditionError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}

  [[nodiscard]] std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace fixsettle
