#include "escortdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "escortdyn/errors.hpp"
#include "escortdyn/geometry.hpp"

namespace escortdyn {

SimplexPoint sample_uniform_simplex(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> exponential(1.0);
    Vector x(n);
    double sum = 0.0;
    for (double& v : x) {
        // Reject exact zeros so samples stay interior.
        do {
            v = exponential(rng);
        } while (!(v > 0.0));
        sum += v;
    }
    for (double& v : x) {
        v /= sum;
    }
    return SimplexPoint(std::move(x));
}

bool is_rest_point(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x, double tol) {
    const Vector v = vector_field(phi, f, x);
    return std::all_of(v.begin(), v.end(), [tol](double c) { return std::abs(c) <= tol; });
}

ESSReport ess_check_sampled(const FitnessLandscape& f, const SimplexPoint& x_star, std::size_t num_samples,
                            std::optional<double> radius, std::uint64_t seed) {
    if (!x_star.interior()) {
        throw DomainError("ESS candidate must be an interior state");
    }
    if (radius && !(*radius > 0.0)) {
        throw ConfigError("ESS sampling radius must be positive");
    }
    const std::size_t n = x_star.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    ESSReport report{x_star, 0, std::numeric_limits<double>::infinity(), std::nullopt};
    while (report.samples_tested < num_samples) {
        const SimplexPoint d = sample_uniform_simplex(n, rng);
        Vector x = d.coords();
        Vector diff(n);
        double dist = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diff[i] = d[i] - x_star[i];
            dist += diff[i] * diff[i];
        }
        dist = std::sqrt(dist);
        if (dist < 1e-14) {
            continue;
        }
        if (radius && dist > *radius) {
            // Pull the sample toward x* along the segment; convexity keeps it on the simplex.
            const double scale = *radius / dist * unit(rng);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = x_star[i] + scale * diff[i];
            }
            const double sum = std::accumulate(x.begin(), x.end(), 0.0);
            for (double& v : x) {
                v /= sum;
            }
        }
        const Vector fx = f(x);
        double margin = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            margin += (x_star[i] - x[i]) * fx[i];
        }
        ++report.samples_tested;
        if (margin < report.min_margin) {
            report.min_margin = margin;
        }
        if (margin <= 0.0 && !report.failed_at) {
            report.failed_at = SimplexPoint(x);
        }
    }
    return report;
}

std::vector<double> lyapunov_series(const Escort& phi, const Trajectory& traj, const SimplexPoint& x_star) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& x : traj.states) {
        out.push_back(escort_divergence(phi, x_star, x));
    }
    return out;
}

bool is_non_increasing(std::span<const double> series, double tol) {
    for (std::size_t k = 1; k < series.size(); ++k) {
        if (series[k] > series[k - 1] + tol) {
            return false;
        }
    }
    return true;
}

double fisher_rate(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x) {
    if (!f.has_potential()) {
        throw ConfigError("fisher_rate needs a landscape with a declared potential");
    }
    const Vector w = phi.weights(x.span());
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    return z * escort_variance(phi, x, f(x.span()));
}

double potential_rate_finite_difference(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x,
                                        double h) {
    const Vector v = vector_field(phi, f, x);
    Vector ahead = x.coords();
    Vector behind = x.coords();
    for (std::size_t i = 0; i < v.size(); ++i) {
        ahead[i] += h * v[i];
        behind[i] -= h * v[i];
    }
    return (f.potential(ahead) - f.potential(behind)) / (2.0 * h);
}

double integral_of_motion(const Escort& phi, const SimplexPoint& x_star, const SimplexPoint& x) {
    if (x_star.size() != x.size()) {
        throw DimensionError("reference and state dimensions differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x_star[i] == 0.0) {
            continue;
        }
        // A type the reference supports has gone extinct: log_phi(0) = -inf.
        if (x[i] == 0.0) {
            try {
                acc += x_star[i] * escort_log(phi, 0.0);
            } catch (const DomainError&) {
                return -std::numeric_limits<double>::infinity();
            } catch (const QuadratureError&) {
                return -std::numeric_limits<double>::infinity();
            }
            continue;
        }
        acc += x_star[i] * escort_log(phi, x[i]);
    }
    return acc;
}

}  // namespace escortdyn
