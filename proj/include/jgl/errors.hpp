#pragma once

#include <stdexcept>
#include <string>

namespace jgl {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// A symmetric matrix failed the positive-definiteness test (pivot below the
// trace-scaled tolerance during factorization).
struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// A function has a jump strictly inside the interval, so derivative-based
// quantities (sup |f'|) do not exist even in the weak sense.
struct DiscontinuityInside : Error {
    using Error::Error;
};

struct InvalidEpsilon : Error {
    using Error::Error;
};

struct InvalidCount : Error {
    using Error::Error;
};

struct NotIncreasing : Error {
    using Error::Error;
};

// The rational bound divides by the measure of the integration interval.
struct ZeroMeasure : Error {
    using Error::Error;
};

struct EmptySupport : Error {
    using Error::Error;
};

struct ConstraintViolated : Error {
    using Error::Error;
};

// Adaptive quadrature exceeded the recursion depth limit; the integrand is
// non-integrable or pathological on the requested interval.
struct MaxDepthExceeded : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace jgl
