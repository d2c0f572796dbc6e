#pragma once

#include <stdexcept>

namespace tsk {

// Argument shapes disagree (vector lengths, ring truncation degree, rank).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct NotInvertibleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A drop would break monotonicity of the family at the chosen class.
struct MinimalityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ContainmentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidMultifiltrationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SearchExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two independent computations disagreed. Never expected on valid input.
struct InternalConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace tsk
