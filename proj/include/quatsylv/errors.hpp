#pragma once

#include <stdexcept>
#include <string>

namespace quatsylv {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroDivision : std::domain_error {
  using std::domain_error::domain_error;
};

// A complex matrix that should carry quaternion structure does not.
struct StructureViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hypotheses of a constrained solver do not hold for the given data.
struct SideConditionViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotEtaHermitian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quatsylv
