#pragma once

#include <stdexcept>
#include <string>

namespace shellspec {

/// Bad input: rejected before any heavy work. CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure discovered mid-computation (e.g. a grid too coarse to
/// keep an operator positive definite). CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace shellspec
