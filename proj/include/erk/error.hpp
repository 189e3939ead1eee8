#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace erk {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad files, bad arguments, bad indices).
/// The CLI maps this family to exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed on valid input. CLI exit code 1.
class ComputeError : public Error {
public:
    using Error::Error;
};

class DisconnectedPairError : public ComputeError {
public:
    DisconnectedPairError(std::size_t a, std::size_t b)
        : ComputeError("disconnected pair (" + std::to_string(a) + ", " + std::to_string(b) +
                       "): vertices lie in different connected components"),
          a_(a), b_(b) {}

    std::size_t first() const noexcept { return a_; }
    std::size_t second() const noexcept { return b_; }

private:
    std::size_t a_;
    std::size_t b_;
};

class ConvergenceError : public ComputeError {
public:
    ConvergenceError(std::size_t iterations, double residual)
        : ComputeError("iterative solver did not converge after " + std::to_string(iterations) +
                       " iterations (relative residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

}  // namespace erk
