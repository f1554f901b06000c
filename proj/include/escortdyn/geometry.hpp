#pragma once

#include <span>

#include "escortdyn/escort.hpp"
#include "escortdyn/simplex.hpp"

namespace escortdyn {

// Diagonal Riemannian metric on the simplex; entries are 1/phi(x_i).
class DiagonalMetric {
public:
    // Throws DomainError unless every entry is finite and strictly positive.
    explicit DiagonalMetric(Vector diag);

    const Vector& diag() const noexcept { return diag_; }
    std::size_t size() const noexcept { return diag_.size(); }
    double operator[](std::size_t i) const { return diag_[i]; }

private:
    Vector diag_;
};

// g_ii = 1/phi(x_i), or 1/psi_i(x) for a vector-valued escort. Requires an interior x.
DiagonalMetric escort_metric(const Escort& phi, const SimplexPoint& x);

// sum_i m_i a_i b_i; throws DimensionError on size mismatch.
double metric_inner_product(const DiagonalMetric& m, std::span<const double> a, std::span<const double> b);

/// Escort divergence D_phi(x || y) = sum_i int_{y_i}^{x_i} (log_phi(u) - log_phi(y_i)) du.
///
/// This is the Bregman divergence generated by the antiderivative of log_phi,
/// linearized at y. For the identity escort it is the Kullback-Leibler
/// divergence sum_i x_i log(x_i / y_i) on the simplex; for the unit constant
/// escort it is |x - y|^2 / 2. With y = x* it is the Lyapunov function of the
/// escort dynamic toward an ESS x*.
///
/// Accepts arbitrary nonnegative vectors so that it can be differentiated off
/// the simplex. Boundary coordinates follow the usual KL conventions:
/// 0 log 0 = 0, and a term that is +infinity raises DivergenceInfinite.
double escort_divergence(const Escort& phi, std::span<const double> x, std::span<const double> y);
double escort_divergence(const Escort& phi, const SimplexPoint& x, const SimplexPoint& y);

// Same quantity by nested quadrature: adaptive Simpson over u, with the inner
// escort logarithm also computed by quadrature. Interior coordinates only.
double escort_divergence_quadrature(const Escort& phi, std::span<const double> x, std::span<const double> y);

// Componentwise F(x_i), F(u) = int dv / sqrt(phi(v)), anchored at 0 when the
// integral converges there and at 1 otherwise. Identity gives 2 sqrt(u).
Vector sphere_coordinate(const Escort& phi, const SimplexPoint& x);

// Great-circle distance 2 arccos(sum_i sqrt(p_i q_i)) on the radius-2 sphere.
double geodesic_distance_identity(const SimplexPoint& p, const SimplexPoint& q);

}  // namespace escortdyn
