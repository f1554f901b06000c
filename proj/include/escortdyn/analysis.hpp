#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "escortdyn/dynamics.hpp"
#include "escortdyn/escort.hpp"
#include "escortdyn/landscape.hpp"
#include "escortdyn/simplex.hpp"

namespace escortdyn {

// Uniform (Dirichlet(1, ..., 1)) sample from the n-simplex.
SimplexPoint sample_uniform_simplex(std::size_t n, std::mt19937_64& rng);

bool is_rest_point(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x, double tol);

struct ESSReport {
    SimplexPoint candidate;
    std::size_t samples_tested = 0;
    // Minimum of (x* - x) . f(x) over the samples.
    double min_margin = 0.0;
    // First sample with a nonpositive margin; empty means PassedSampled.
    std::optional<SimplexPoint> failed_at;

    bool passed() const noexcept { return !failed_at.has_value(); }
};

// Samples states uniformly (optionally within `radius` of x*) and reports the
// smallest ESS margin (x* - x) . f(x). Sampled evidence only, not a proof.
ESSReport ess_check_sampled(const FitnessLandscape& f, const SimplexPoint& x_star, std::size_t num_samples,
                            std::optional<double> radius = std::nullopt, std::uint64_t seed = 0);

// D_phi(x* || x(t)) for every state of the trajectory.
std::vector<double> lyapunov_series(const Escort& phi, const Trajectory& traj, const SimplexPoint& x_star);

// True when series[k+1] <= series[k] + tol for every k.
bool is_non_increasing(std::span<const double> series, double tol);

// Z_phi(x) Var_phi[f(x)], the rate of increase of the potential along the flow.
double fisher_rate(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x);

// Central difference (V(x + h xdot) - V(x - h xdot)) / 2h of the declared potential
// along the vector field.
double potential_rate_finite_difference(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x,
                                        double h = 1e-5);

// sum_i x*_i log_phi(x_i)
double integral_of_motion(const Escort& phi, const SimplexPoint& x_star, const SimplexPoint& x);

}  // namespace escortdyn
