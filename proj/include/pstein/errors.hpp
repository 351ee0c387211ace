#pragma once

#include <stdexcept>
#include <string>

namespace pstein {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A kernel or density evaluated to NaN/Inf at an integration node.
struct NumericalDomainError : Error {
    using Error::Error;
};

// Requested method cannot handle the problem size (e.g. tensor quadrature
// above the dimension ceiling, multiple integrals above the order cap).
struct MethodUnsupportedError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct IndexError : Error {
    using Error::Error;
};

struct NotDegenerateError : Error {
    using Error::Error;
};

struct NotNormalizedError : Error {
    using Error::Error;
};

struct EmptySampleError : Error {
    using Error::Error;
};

struct DensityTooPeakedError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace pstein
