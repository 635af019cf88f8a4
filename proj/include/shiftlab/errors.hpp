#ifndef SHIFTLAB_ERRORS_HPP
#define SHIFTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shiftlab {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid space parameters; the message names the violated bound.
struct ConstructionError : Error {
    using Error::Error;
};

// A precision target could not be met within configured limits.
struct PrecisionError : Error {
    using Error::Error;
};

// Truncation dimension too small for the requested construction.
struct DimensionError : Error {
    using Error::Error;
};

// Trusted window exhausted or a truncation tail bound exceeds tolerance.
struct TruncationError : Error {
    using Error::Error;
};

// Quadrature rule order insufficient for the requested integrand.
struct QuadratureError : Error {
    using Error::Error;
};

// Unknown names / malformed scenario input.
struct ConfigError : Error {
    using Error::Error;
};

// Input violates a documented operation precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// Evaluation would overflow the representable range.
struct RangeError : Error {
    using Error::Error;
};

} // namespace shiftlab

#endif
