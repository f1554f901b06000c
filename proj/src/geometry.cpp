#include "escortdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "escortdyn/errors.hpp"
#include "escortdyn/quadrature.hpp"

namespace escortdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr quadrature::SimpsonOptions kOuterQuadrature{1e-9, 50};
constexpr quadrature::SimpsonOptions kSphereQuadrature{1e-10, 50};

void require_same_size(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("size mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
}

void require_nonnegative(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("divergence coordinate " + std::to_string(v) + " is outside [0, inf)");
    }
}

// Generalized KL term x log(x/y) - x + y with 0 log 0 = 0.
double kl_term(double x, double y) {
    require_nonnegative(x);
    require_nonnegative(y);
    if (x == y) {
        return 0.0;
    }
    if (y == 0.0) {
        return kInf;
    }
    if (x == 0.0) {
        return y;
    }
    return x * std::log(x / y) - x + y;
}

// Term for phi(u) = u^q, q != 1.
double power_term(double q, double x, double y) {
    require_nonnegative(x);
    require_nonnegative(y);
    if (x == y) {
        return 0.0;
    }
    // log_phi(0) = -inf for q > 1.
    if (y == 0.0 && q > 1.0) {
        return kInf;
    }
    // Antiderivative of log_phi is infinite at 0 for q >= 2.
    if (x == 0.0 && q >= 2.0) {
        return kInf;
    }
    if (std::abs(q - 2.0) < Escort::kUnitPowerThreshold) {
        return std::log(y / x) + x / y - 1.0;
    }
    const double a = 2.0 - q;
    return ((std::pow(x, a) - std::pow(y, a)) / a - std::pow(y, 1.0 - q) * (x - y)) / (1.0 - q);
}

double exponential_term(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("divergence coordinate is not finite");
    }
    const double d = x - y;
    return std::exp(-y) * (std::expm1(-d) + d);
}

}  // namespace

DiagonalMetric::DiagonalMetric(Vector diag) : diag_(std::move(diag)) {
    for (double d : diag_) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw DomainError("metric entry " + std::to_string(d) + " is not finite and positive");
        }
    }
}

DiagonalMetric escort_metric(const Escort& phi, const SimplexPoint& x) {
    if (!x.interior()) {
        throw DomainError("escort metric needs an interior state");
    }
    Vector w = phi.weights(x.span());
    for (double& wi : w) {
        if (!(wi > 0.0)) {
            throw DomainError("escort " + phi.describe() + " is not positive on the state");
        }
        wi = 1.0 / wi;
    }
    return DiagonalMetric(std::move(w));
}

double metric_inner_product(const DiagonalMetric& m, std::span<const double> a, std::span<const double> b) {
    if (a.size() != m.size() || b.size() != m.size()) {
        throw DimensionError("inner product vectors do not match metric dimension " + std::to_string(m.size()));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        acc += m[i] * a[i] * b[i];
    }
    return acc;
}

double escort_divergence(const Escort& phi, std::span<const double> x, std::span<const double> y) {
    require_same_size(x, y);
    if (!phi.is_scalar()) {
        throw DomainError("escort divergence is not defined for vector-valued escorts");
    }
    if (std::holds_alternative<family::Custom>(phi.family())) {
        return escort_divergence_quadrature(phi, x, y);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double yi = y[i];
        const double term = std::visit(
            overloaded{
                [&](const family::Identity&) { return kl_term(xi, yi); },
                [&](const family::Scaled& s) { return kl_term(xi, yi) / s.beta; },
                [&](const family::Power& p) {
                    if (std::abs(p.q - 1.0) < Escort::kUnitPowerThreshold) {
                        return kl_term(xi, yi);
                    }
                    return power_term(p.q, xi, yi);
                },
                [&](const family::Constant& c) { return (xi - yi) * (xi - yi) / (2.0 * c.c); },
                [&](const family::Exponential&) { return exponential_term(xi, yi); },
                [](const auto&) -> double { return 0.0; },
            },
            phi.family());
        if (std::isinf(term)) {
            throw DivergenceInfinite("escort divergence of " + phi.describe() + " is infinite at coordinate " +
                                     std::to_string(i));
        }
        total += term;
    }
    return total;
}

double escort_divergence(const Escort& phi, const SimplexPoint& x, const SimplexPoint& y) {
    return escort_divergence(phi, x.span(), y.span());
}

double escort_divergence_quadrature(const Escort& phi, std::span<const double> x, std::span<const double> y) {
    require_same_size(x, y);
    if (!phi.is_scalar()) {
        throw DomainError("escort divergence is not defined for vector-valued escorts");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double yi = y[i];
        if (x[i] == yi) {
            continue;
        }
        // log_phi(u) - log_phi(y_i) = int_{y_i}^{u} dv / phi(v)
        auto gap = [&phi, yi](double u) {
            return quadrature::adaptive_simpson(
                [&phi](double v) {
                    const double p = phi(v);
                    if (!(p > 0.0)) {
                        throw DomainError("escort " + phi.describe() + " is not positive at " + std::to_string(v));
                    }
                    return 1.0 / p;
                },
                yi, u, {1e-10, 50});
        };
        total += quadrature::adaptive_simpson(gap, yi, x[i], kOuterQuadrature);
    }
    return total;
}

Vector sphere_coordinate(const Escort& phi, const SimplexPoint& x) {
    if (!x.interior()) {
        throw DomainError("sphere coordinate needs an interior state");
    }
    if (!phi.is_scalar()) {
        throw DomainError("sphere coordinate is not defined for vector-valued escorts");
    }
    auto transform = [&phi](double u) {
        return std::visit(
            overloaded{
                [u](const family::Identity&) { return 2.0 * std::sqrt(u); },
                [u](const family::Scaled& s) { return 2.0 * std::sqrt(u / s.beta); },
                [u](const family::Power& p) {
                    if (std::abs(p.q - 2.0) < Escort::kUnitPowerThreshold) {
                        return std::log(u);
                    }
                    const double a = 1.0 - 0.5 * p.q;
                    // Converges at 0 only for q < 2.
                    return p.q < 2.0 ? std::pow(u, a) / a : (std::pow(u, a) - 1.0) / a;
                },
                [u](const family::Constant& c) { return u / std::sqrt(c.c); },
                [u](const family::Exponential&) { return -2.0 * std::expm1(-0.5 * u); },
                [u, &phi](const family::Custom& c) {
                    auto integrand = [&phi](double v) {
                        const double p = phi(v);
                        if (!(p > 0.0)) {
                            throw DomainError("escort is not positive at " + std::to_string(v));
                        }
                        return 1.0 / std::sqrt(p);
                    };
                    double at_zero = 0.0;
                    try {
                        at_zero = c.fn(0.0);
                    } catch (const Error&) {
                        at_zero = 0.0;
                    }
                    const double anchor = (std::isfinite(at_zero) && at_zero > 0.0) ? 0.0 : 1.0;
                    return quadrature::adaptive_simpson(integrand, anchor, u, kSphereQuadrature);
                },
                [](const family::VectorValued&) -> double { return 0.0; },
            },
            phi.family());
    };
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = transform(x[i]);
    }
    return out;
}

double geodesic_distance_identity(const SimplexPoint& p, const SimplexPoint& q) {
    require_same_size(p.span(), q.span());
    // On the simplex sqrt(p) and sqrt(q) are unit vectors, so
    // arccos(sum sqrt(p_i q_i)) = 2 arcsin(|sqrt(p) - sqrt(q)| / 2). The chord
    // form keeps full precision near p = q where arccos loses half the digits.
    double chord2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        chord2 += d * d;
    }
    return 4.0 * std::asin(std::clamp(0.5 * std::sqrt(chord2), 0.0, 1.0));
}

}  // namespace escortdyn
