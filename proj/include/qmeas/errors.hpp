#pragma once

#include <stdexcept>
#include <string>

namespace qmeas {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct NotPrime : Error {
    using Error::Error;
};
struct TooManySettings : Error {
    using Error::Error;
};
struct DuplicateOperator : Error {
    using Error::Error;
};
struct InvalidDimension : Error {
    using Error::Error;
};
struct SingularNormalization : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct NonUniformWeights : Error {
    using Error::Error;
};
struct NotRankOneProjective : Error {
    using Error::Error;
};
struct InadmissibleM : Error {
    using Error::Error;
};
struct SignPatternOverflow : Error {
    using Error::Error;
};
struct SolverFailure : Error {
    using Error::Error;
};

// Raised when a deterministic-strategy enumeration would exceed the
// configured cap.  Carries the required cap so callers can report it.
struct EnumerationOverflow : Error {
    EnumerationOverflow(const std::string& msg, unsigned long long required)
        : Error(msg), required_cap(required) {}
    unsigned long long required_cap;
};

}  // namespace qmeas
