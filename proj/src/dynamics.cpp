#include "escortdyn/dynamics.hpp"

#include "escortdyn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "escortdyn/errors.hpp"
#include "escortdyn/geometry.hpp"

namespace escortdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate(const IntegrateOptions& o, const SimplexPoint& x0) {
    if (!std::isfinite(o.t_end) || !(o.t_end > 0.0)) {
        throw ConfigError("t_end must be positive and finite");
    }
    if (!std::isfinite(o.step) || !(o.step > 0.0)) {
        throw ConfigError("step must be positive and finite");
    }
    if (o.step > o.t_end) {
        throw ConfigError("step must not exceed t_end");
    }
    if (o.observe_every == 0) {
        throw ConfigError("observe_every must be at least 1");
    }
    if (o.reference && o.reference->size() != x0.size()) {
        throw ConfigError("reference state has a different dimension than x0");
    }
}

std::size_t step_count(const IntegrateOptions& o) {
    return static_cast<std::size_t>(std::ceil(o.t_end / o.step - 1e-9));
}

double time_at(const IntegrateOptions& o, std::size_t k, std::size_t steps) {
    return k == steps ? o.t_end : static_cast<double>(k) * o.step;
}

DiagnosticsRow diagnostics(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x,
                           const std::optional<SimplexPoint>& reference) {
    DiagnosticsRow row;
    row.escort_mean_fitness = detail::weighted_mean(phi.weights(x.span()), f(x.span()));
    if (reference && phi.is_scalar()) {
        try {
            row.lyapunov = escort_divergence(phi, reference->span(), x.span());
        } catch (const DivergenceInfinite&) {
            row.lyapunov = kInf;
        } catch (const DomainError&) {
            row.lyapunov = kInf;
        }
        row.integral_of_motion = integral_of_motion(phi, *reference, x);
    }
    return row;
}

std::size_t most_negative(std::span<const double> x) {
    return static_cast<std::size_t>(std::distance(x.begin(), std::min_element(x.begin(), x.end())));
}

struct StepOutcome {
    Termination::Kind kind = Termination::Kind::Completed;
    std::optional<std::size_t> index;
};

// Classic RK4 step. On success x holds the new state.
StepOutcome rk4_step(const Escort& phi, const FitnessLandscape& f, Vector& x, double h) {
    const std::size_t n = x.size();
    Vector stage = x;
    auto at = [&](const Vector& base, const Vector& k, double scale) {
        for (std::size_t i = 0; i < n; ++i) {
            stage[i] = base[i] + scale * k[i];
        }
        return detail::field(phi, f, stage);
    };
    Vector k1, k2, k3, k4;
    try {
        k1 = detail::field(phi, f, x);
        k2 = at(x, k1, 0.5 * h);
        k3 = at(x, k2, 0.5 * h);
        k4 = at(x, k3, h);
    } catch (const DomainError&) {
        return {Termination::Kind::BoundaryExit, most_negative(stage)};
    }
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(next[i])) {
            return {Termination::Kind::StepFailure, i};
        }
    }
    if (next[most_negative(next)] < 0.0) {
        return {Termination::Kind::BoundaryExit, most_negative(next)};
    }
    const double sum = std::accumulate(next.begin(), next.end(), 0.0);
    if (std::abs(sum - 1.0) > kRenormalizeThreshold) {
        for (double& v : next) {
            v /= sum;
        }
    }
    try {
        (void)phi.weights(next);
    } catch (const DomainError&) {
        return {Termination::Kind::BoundaryExit, most_negative(next)};
    }
    x = std::move(next);
    return {};
}

}  // namespace

const char* to_string(Termination::Kind kind) {
    switch (kind) {
        case Termination::Kind::Completed:
            return "Completed";
        case Termination::Kind::BoundaryExit:
            return "BoundaryExit";
        case Termination::Kind::StepFailure:
            return "StepFailure";
    }
    return "Unknown";
}

namespace detail {

Vector field(const Escort& phi, const FitnessLandscape& f, std::span<const double> x) {
    const Vector w = phi.weights(x);
    const Vector fx = f(x);
    const double mean = weighted_mean(w, fx);
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = w[i] * (fx[i] - mean);
    }
    return out;
}

}  // namespace detail

Vector vector_field(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x) {
    return detail::field(phi, f, x.span());
}

Trajectory integrate(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x0,
                     const IntegrateOptions& options) {
    validate(options, x0);
    (void)detail::field(phi, f, x0.span());

    Trajectory traj;
    auto record = [&](double t, const SimplexPoint& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.diagnostics.push_back(diagnostics(phi, f, x, options.reference));
    };
    record(0.0, x0);

    const std::size_t steps = step_count(options);
    Vector x = x0.coords();
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_prev = time_at(options, k - 1, steps);
        const double t = time_at(options, k, steps);
        const StepOutcome outcome = rk4_step(phi, f, x, t - t_prev);
        if (outcome.kind != Termination::Kind::Completed) {
            if (traj.times.back() != t_prev) {
                record(t_prev, SimplexPoint(x));
            }
            traj.termination = {outcome.kind, t, outcome.index};
            return traj;
        }
        if (k % options.observe_every == 0 || k == steps) {
            record(t, SimplexPoint(x));
        }
    }
    traj.termination = {Termination::Kind::Completed, options.t_end, std::nullopt};
    return traj;
}

SimplexPoint discrete_step(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x) {
    const Vector fx = f(x.span());
    for (std::size_t i = 0; i < fx.size(); ++i) {
        if (!(fx[i] > 0.0)) {
            throw PositivityError("discrete map needs positive fitness; f_" + std::to_string(i) + " = " +
                                  std::to_string(fx[i]));
        }
    }
    Vector w = phi.weights(x.span());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] *= fx[i];
        total += w[i];
    }
    if (!(total > 0.0)) {
        throw PositivityError("escort-weighted fitness is not positive");
    }
    for (double& v : w) {
        v /= total;
    }
    return SimplexPoint(std::move(w));
}

Matrix gauge_project(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix out = a;
    for (std::size_t j = 0; j < n; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += a(i, j);
        }
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = a(i, j) - mean;
        }
    }
    return out;
}

FitnessLandscape gauge_shift(const FitnessLandscape& f, std::function<double(std::span<const double>)> g) {
    return FitnessLandscape::custom([f, g = std::move(g)](std::span<const double> x) {
        Vector out = f(x);
        const double shift = g(x);
        for (double& v : out) {
            v += shift;
        }
        return out;
    });
}

Trajectory integrate_formal_solution(const Escort& phi, const FitnessLandscape& f, const SimplexPoint& x0,
                                     const IntegrateOptions& options) {
    validate(options, x0);
    if (!phi.is_scalar()) {
        throw ConfigError("formal solution needs a scalar escort");
    }
    if (!x0.interior()) {
        throw DomainError("formal solution needs an interior initial state");
    }
    const std::size_t n = x0.size();

    // Augmented state (v_1, ..., v_n, G).
    auto reconstruct = [&](const Vector& y) {
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = escort_exp(phi, y[i] - y[n]);
        }
        return x;
    };
    auto rhs = [&](const Vector& y) {
        const Vector x = reconstruct(y);
        Vector dy = f(x);
        dy.push_back(detail::weighted_mean(phi.weights(x), dy));
        return dy;
    };

    Vector y(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = escort_log(phi, x0[i]);
    }

    Trajectory traj;
    auto record = [&](double t, const Vector& state) {
        SimplexPoint x(reconstruct(state));
        traj.times.push_back(t);
        traj.diagnostics.push_back(diagnostics(phi, f, x, options.reference));
        traj.states.push_back(std::move(x));
    };
    record(0.0, y);

    const std::size_t steps = step_count(options);
    Vector stage(n + 1);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t = time_at(options, k, steps);
        const double h = t - time_at(options, k - 1, steps);
        auto at = [&](const Vector& kv, double scale) {
            for (std::size_t i = 0; i <= n; ++i) {
                stage[i] = y[i] + scale * kv[i];
            }
            return rhs(stage);
        };
        const Vector k1 = rhs(y);
        const Vector k2 = at(k1, 0.5 * h);
        const Vector k3 = at(k2, 0.5 * h);
        const Vector k4 = at(k3, h);
        for (std::size_t i = 0; i <= n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if (k % options.observe_every == 0 || k == steps) {
            try {
                record(t, y);
            } catch (const DomainError&) {
                traj.termination = {Termination::Kind::StepFailure, t, std::nullopt};
                return traj;
            }
        }
    }
    traj.termination = {Termination::Kind::Completed, options.t_end, std::nullopt};
    return traj;
}

}  // namespace escortdyn
