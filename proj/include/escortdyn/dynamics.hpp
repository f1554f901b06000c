#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "escortdyn/escort.hpp"
#include "escortdyn/landscape.hpp"
#include "escortdyn/simplex.hpp"

namespace escortdyn {

struct DiagnosticsRow {
    double escort_mean_fitness = 0.0;
    // D_phi(x* || x); +inf once the divergence diverges at the boundary.
    std::optional<double> lyapunov;
    // sum_i x*_i log_phi(x_i); -inf once log_phi diverges at the boundary.
    std::optional<double> integral_of_motion;
};

struct Termination {
    enum class Kind { Completed, BoundaryExit, StepFailure };
    Kind kind = Kind::Completed;
    // Time at which the run stopped.
    double t = 0.0;
    // Offending coordinate for BoundaryExit.
    std::optional<std::size_t> index;
};

const char* to_string(Termination::Kind kind);

struct Trajectory {
    std::vector<double> times;
    std::vector<SimplexPoint> states;
    std::vector<DiagnosticsRow> diagnostics;
    Termination termination;

    std::size_t size() const noexcept { return times.size(); }
};

struct IntegrateOptions {
    double t_end = 1.0;
    double step = 1e-3;
    std::size_t observe_every = 1;
    // When set, diagnostics include the Lyapunov value and integral of motion.
    std::optional<SimplexPoint> reference = std::nullopt;
};

// Escort replicator vector field phi(x_i) (f_i(x) - <f(x)>_phi).
Vector vector_field(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x);

/// Fixed-step classical RK4 on the escort replicator field.
///
/// After each step the state is divided by its coordinate sum when the sum
/// has drifted from 1 by more than kRenormalizeThreshold. A step that leaves
/// the escort's domain (a negative coordinate, or a zero coordinate for
/// Power q <= 0) ends the run with a BoundaryExit; every state up to the exit
/// is kept. Throws ConfigError on bad options and DomainError if x0 itself is
/// outside the domain.
Trajectory integrate(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x0,
                     const IntegrateOptions& options);

inline constexpr double kRenormalizeThreshold = 1e-13;

// One step of the discrete escort replicator map
// x'_i = phi(x_i) f_i(x) / sum_j phi(x_j) f_j(x). Requires f > 0.
SimplexPoint discrete_step(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x);

// Subtracts each column mean so every column sums to zero.
Matrix gauge_project(const Matrix& a);

// x -> f(x) + g(x) (1, ..., 1); leaves the vector field unchanged.
FitnessLandscape gauge_shift(const FitnessLandscape& f, std::function<double(std::span<const double>)> g);

/// Integrates v' = f(x), G' = <f(x)>_phi from v(0) = log_phi(x0), G(0) = 0
/// with RK4 and reconstructs x_i = exp_phi(v_i - G). Throws RangeError when
/// v_i - G leaves the range of log_phi.
Trajectory integrate_formal_solution(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x0,
                                     const IntegrateOptions& options);

namespace detail {

// Vector field at an arbitrary point (RK stages need not lie on the simplex).
Vector field(const Escort& phi, const FitnessLandscape& f, std::span<const double> x);

}  // namespace detail

}  // namespace escortdyn
