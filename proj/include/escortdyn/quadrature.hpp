#pragma once

#include <functional>

namespace escortdyn::quadrature {

struct SimpsonOptions {
    double abs_tolerance = 1e-10;
    int max_depth = 50;
};

// Adaptive Simpson integral of f over [a, b] (b < a gives the negated integral).
// Throws DomainError if the integrand is not finite at a sample point and
// QuadratureError if some subinterval reaches max_depth without converging.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        SimpsonOptions options = {});

}  // namespace escortdyn::quadrature
