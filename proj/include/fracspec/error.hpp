#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracspec {

/// Base for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A precondition on arguments or configuration was violated.
struct InvalidArgument : Error {
    using Error::Error;
};

/// The computation itself failed: non-finite values, overflow of the
/// exponential weight, or a fixed-point iteration that does not contract.
struct NumericFailure : Error {
    using Error::Error;
};

struct NonFiniteValue : NumericFailure {
    NonFiniteValue(const std::string& what, std::size_t node)
        : NumericFailure(what + " (node " + std::to_string(node) + ")"), node(node) {}
    std::size_t node;
};

struct NonContractive : NumericFailure {
    NonContractive(const std::string& what, double suggested_rho)
        : NumericFailure(what), suggested_rho(suggested_rho) {}
    double suggested_rho;
};

}  // namespace fracspec
