#pragma once

#include <stdexcept>
#include <string>

namespace copos {

// Malformed input: bad JSON, non-symmetric matrix, unparsable rational.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (dimension mismatch,
// non-copositive input where strictness is required, bad witness, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact copositivity could not be decided within the depth limit.
struct UndecidedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed; indicates a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace copos
