#pragma once

#include <stdexcept>
#include <string>

namespace treeldp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by TransitionMatrix::validate.
struct MatrixValidationError : Error {
    enum class Kind { NonSquare, NonBinaryEntry, ZeroRow, ZeroColumn };

    MatrixValidationError(Kind k, int idx, const std::string& msg)
        : Error(msg), kind(k), index(idx) {}

    Kind kind;
    int index;  // offending row/column (0-based), -1 when not applicable
};

// Exact (big-integer) arithmetic requested beyond the configured cap.
struct SizeLimitExceeded : Error {
    using Error::Error;
};

// The ratio ||M^{n+1}||/||M^n|| does not settle above 1.
struct GrowthConditionViolated : Error {
    using Error::Error;
};

struct MaxIterExceeded : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

// Arena too shallow for the requested Hamiltonian.
struct DepthInsufficient : Error {
    using Error::Error;
};

// F has one-sided derivatives only at beta = 0 when p != 1/2.
struct KinkAtZero : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace treeldp
