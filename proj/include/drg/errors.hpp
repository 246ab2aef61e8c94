#pragma once

#include <stdexcept>
#include <string>

namespace drg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed text input (arrays, graphs, maps).
struct ParseError : Error {
    using Error::Error;
};

// Caller broke an operation's precondition (index out of range, mismatched
// field contexts, map that is not a homomorphism, ...).
struct PreconditionError : Error {
    using Error::Error;
};

// Parameters that cannot belong to a distance-regular graph. These are
// verdicts for the feasibility battery, not crashes.
struct InfeasibleError : Error {
    using Error::Error;
};

// Valid input the exact engine does not handle (e.g. irreducible factors of
// degree > 4, integer overflow in parameter tensors).
struct UnsupportedError : Error {
    using Error::Error;
};

// A mathematical identity that must hold did not. Always a bug.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace drg
