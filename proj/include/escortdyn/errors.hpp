#pragma once

#include <stdexcept>
#include <string>

namespace escortdyn {

// Root of every error the library raises. Catch this to handle them all.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An escort or landscape was evaluated outside the set where it is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature could not meet its tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

// Argument of an escort exponential lies outside the range of the escort logarithm.
class RangeError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// The discrete map needs strictly positive fitness.
class PositivityError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Divergence is +infinity, e.g. KL with x_i > 0 and y_i = 0.
class DivergenceInfinite : public Error {
public:
    using Error::Error;
};

}  // namespace escortdyn
