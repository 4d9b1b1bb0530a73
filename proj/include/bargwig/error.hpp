#pragma once

#include <stdexcept>
#include <string>

namespace bargwig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameters, malformed state descriptions, unsupported
/// state/method combinations.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach its tolerance. Carries the two
/// estimates that were compared.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double reference)
        : Error(what), estimate_(estimate), reference_(reference) {}

    [[nodiscard]] double estimate() const noexcept { return estimate_; }
    [[nodiscard]] double reference() const noexcept { return reference_; }

private:
    double estimate_;
    double reference_;
};

/// A health check on an intermediate result failed, e.g. the quadratic form
/// came out with a non-negligible imaginary part.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace bargwig
