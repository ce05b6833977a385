#pragma once

#include <stdexcept>
#include <string>

namespace chuasync {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
    using Error::Error;
};

/// mu0 <= 0: the x2/x3 subsystem is not Hurwitz with margin, nothing can be certified.
struct NonPositiveDecayRate : Error {
    using Error::Error;
};

struct IndexOutOfRange : Error {
    using Error::Error;
};

struct TooFewNodes : Error {
    using Error::Error;
};

struct NonPositiveGain : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NonFiniteInput : Error {
    using Error::Error;
};

struct DimensionTooLarge : Error {
    using Error::Error;
};

/// QR iteration hit the iteration cap before deflating every eigenvalue.
struct EigensolverFailure : Error {
    using Error::Error;
};

/// A trajectory coordinate left the divergence guard (|x| > 1e12) or became non-finite.
struct NonFiniteState : Error {
    using Error::Error;
};

struct DegenerateWindow : Error {
    using Error::Error;
};

struct ConfigParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

} // namespace chuasync
