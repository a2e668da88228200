#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed speed-expression text. `offset` is the byte offset of the first
// offending character in the input string.
struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

// Runtime failure while evaluating a speed expression (division by zero,
// symbol index exceeding the active dimension, ...).
struct EvalError : Error {
    using Error::Error;
};

// Precondition violation on a geometric/numeric operation (negative radius,
// radius beyond the overflow cap, invalid configuration, ...).
struct DomainError : Error {
    using Error::Error;
};

// A computation that started from valid inputs could not be completed
// (non-convergent quadrature, cross-check disagreement, ...).
struct ComputeError : Error {
    using Error::Error;
};

}  // namespace geoflow
