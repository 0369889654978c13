#pragma once

#include <stdexcept>
#include <string>

namespace usc {

/// Invalid physical parameters or malformed input. Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A nonlinear solve failed to reach its tolerance. Maps to CLI exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), residual_(last_residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Output could not be written or input could not be read. Maps to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace usc
