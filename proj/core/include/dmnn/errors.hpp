#pragma once

#include <stdexcept>

namespace dmnn {

// Error taxonomy shared by all modules. Everything derives from
// std::runtime_error so callers can catch per category or broadly.

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (r <= 0, bad index).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver exhausted its budget before reaching tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input has no usable statistics (e.g. zero variance).
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training loss became non-finite.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dmnn
