#pragma once

#include <stdexcept>
#include <string>

namespace qmce {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or parameter validation failed (CLI exit code 2).
struct DimensionError : Error {
    using Error::Error;
};

// No codeword within the designed error capacity (CLI exit code 3).
struct DecodingFailure : Error {
    using Error::Error;
};

// A basis map sent two support strings to the same image; the transformation
// is not unitary on this state.
struct SupportCollision : Error {
    using Error::Error;
};

// Qubit or enumeration cap exceeded without an explicit override
// (CLI exit code 4).
struct CapExceeded : Error {
    using Error::Error;
};

}  // namespace qmce
