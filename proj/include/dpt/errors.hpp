// errors.hpp: Exception hierarchy shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace dpt {

// Bad user input or violated preconditions. The CLI maps these to exit code 2.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateInputError : ValidationError {
    using ValidationError::ValidationError;
};

struct BracketingError : ValidationError {
    using ValidationError::ValidationError;
};

// Numerical failures. The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No stationary state exists (non-Hurwitz dynamics).
struct StabilityError : NumericalError {
    using NumericalError::NumericalError;
};

struct ConvergenceError : NumericalError {
    using NumericalError::NumericalError;
};

struct PoleError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace dpt
