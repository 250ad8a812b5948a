#pragma once

#include <stdexcept>
#include <string>

namespace inertia_lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes or arities disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on a scalar argument failed (bad tolerance, a >= b, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An entry fell outside the working interval.
class DomainError : public Error {
public:
    DomainError(const std::string& what, std::size_t row, std::size_t col, std::size_t var,
                double value)
        : Error(what), row_(row), col_(col), var_(var), value_(value) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    std::size_t var() const noexcept { return var_; }
    double value() const noexcept { return value_; }

private:
    std::size_t row_;
    std::size_t col_;
    std::size_t var_;
    double value_;
};

/// Cyclic Jacobi hit its sweep cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A matrix document was not symmetric within tolerance.
class AsymmetryError : public Error {
public:
    using Error::Error;
};

/// (k, l) falls outside every regime covered by the classification.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// The random sampler could not realize the requested class.
class SamplingError : public Error {
public:
    using Error::Error;
};

}  // namespace inertia_lab
