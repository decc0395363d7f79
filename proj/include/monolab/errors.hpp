#ifndef MONOLAB_ERRORS_HPP
#define MONOLAB_ERRORS_HPP

#include <stdexcept>

namespace monolab {

// Invalid value or violated precondition on a caller-supplied argument.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unknown qubit label in a register lookup.
struct LabelError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// Request exceeds the 8-qubit / 256-dimensional cap.
struct CapacityError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// Physically degenerate input, e.g. |alpha| in {0,1}: no entanglement to track.
struct DegenerateInputError : ArgumentError {
    using ArgumentError::ArgumentError;
};

// An iterative routine failed to converge or met a non-finite value.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace monolab

#endif
