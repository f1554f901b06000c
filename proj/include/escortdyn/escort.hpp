#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>

#include "escortdyn/simplex.hpp"

namespace escortdyn {

/// Escort families. Each family that has closed forms for the escort
/// logarithm, exponential, divergence and sphere transformation is tagged so
/// those closed forms can be dispatched; Custom falls back to quadrature.
namespace family {

struct Identity {};

// phi(u) = beta * u, beta > 0.
struct Scaled {
    double beta;
};

// phi(u) = u^q.
struct Power {
    double q;
};

// phi(u) = c, c > 0.
struct Constant {
    double c = 1.0;
};

// phi(u) = e^u.
struct Exponential {};

struct Custom {
    std::function<double(double)> fn;
    std::string name = "custom";
};

// psi(x) = (psi_1(x), ..., psi_n(x)), depending on the whole state.
struct VectorValued {
    std::function<Vector(std::span<const double>)> fn;
    std::string name = "vector";
};

}  // namespace family

class Escort {
public:
    using Family = std::variant<family::Identity, family::Scaled, family::Power, family::Constant,
                                family::Exponential, family::Custom, family::VectorValued>;

    // Power escorts with |q - 1| below this threshold use the natural logarithm.
    static constexpr double kUnitPowerThreshold = 1e-9;

    static Escort identity() { return Escort(family::Identity{}); }
    static Escort scaled(double beta);
    static Escort power(double q);
    static Escort constant(double c = 1.0);
    static Escort exponential() { return Escort(family::Exponential{}); }
    static Escort custom(std::function<double(double)> fn, std::string name = "custom");
    static Escort vector_valued(std::function<Vector(std::span<const double>)> fn,
                                std::string name = "vector");

    const Family& family() const noexcept { return family_; }
    bool is_scalar() const noexcept { return !std::holds_alternative<family::VectorValued>(family_); }

    // phi(u) for scalar families. Throws DomainError where phi is undefined
    // (e.g. Power with q <= 0 at u <= 0) and for vector-valued escorts.
    double operator()(double u) const;

    // Escort weights at a state: phi(x_i) per coordinate, or psi(x).
    Vector weights(std::span<const double> x) const;

    std::string describe() const;

private:
    explicit Escort(Family f) : family_(std::move(f)) {}
    Family family_;
};

// Z_phi(x) = sum_i phi(x_i).
double partition_function(const Escort& phi, const SimplexPoint& x);

SimplexPoint escort_distribution(const Escort& phi, const SimplexPoint& x);

// <f>_{phi,x}: expectation of f under the escort distribution of x.
double escort_expectation(const Escort& phi, const SimplexPoint& x, std::span<const double> f);

double escort_variance(const Escort& phi, const SimplexPoint& x, std::span<const double> f);

// Escort logarithm: integral of 1/phi from 1 to u. Closed forms per family,
// adaptive Simpson for Custom.
double escort_log(const Escort& phi, double u);

// Escort logarithm by adaptive quadrature regardless of family.
double escort_log_quadrature(const Escort& phi, double u);

// Inverse of escort_log. Throws RangeError outside the range of escort_log.
double escort_exp(const Escort& phi, double w);

// Inverse of escort_log by bracketing and safeguarded Newton, regardless of family.
double escort_exp_numeric(const Escort& phi, double w);

namespace detail {

// Expectation of f under the given (unnormalized) weights.
double weighted_mean(std::span<const double> weights, std::span<const double> f);

}  // namespace detail

}  // namespace escortdyn
