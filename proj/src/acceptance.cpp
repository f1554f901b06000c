#include "escortdyn/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <utility>

#include "escortdyn/analysis.hpp"
#include "escortdyn/dynamics.hpp"
#include "escortdyn/geometry.hpp"

namespace escortdyn {
namespace {

const SimplexPoint kX0({0.5, 0.3, 0.2});

double sup_norm(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

double relative_drift(const Trajectory& traj, const std::function<double(const SimplexPoint&)>& quantity) {
    const double initial = quantity(traj.states.front());
    double drift = 0.0;
    for (const auto& x : traj.states) {
        drift = std::max(drift, std::abs(quantity(x) - initial) / std::abs(initial));
    }
    return drift;
}

double relative_error(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::vector<SimplexPoint> random_states(std::size_t n, std::size_t count, std::uint64_t seed, double floor = 1e-3) {
    std::mt19937_64 rng(seed);
    std::vector<SimplexPoint> out;
    while (out.size() < count) {
        auto x = sample_uniform_simplex(n, rng);
        if (*std::min_element(x.coords().begin(), x.coords().end()) > floor) {
            out.push_back(std::move(x));
        }
    }
    return out;
}

std::vector<Escort> gradient_flow_escorts() {
    return {Escort::identity(), Escort::power(0.5), Escort::power(2.0), Escort::constant(1.0)};
}

FitnessLandscape rsp() { return FitnessLandscape::matrix_linear(rsp_matrix()); }

struct Builder {
    double scale;
    std::vector<CriterionResult> results;

    void at_most(int id, std::string name, double measured, double tolerance) {
        results.push_back({id, std::move(name), measured, tolerance * scale, measured <= tolerance * scale});
    }
    void below(int id, std::string name, double measured, double tolerance) {
        results.push_back({id, std::move(name), measured, tolerance * scale, measured < tolerance * scale});
    }
};

void rsp_conservation(Builder& b) {
    const auto traj = integrate(Escort::identity(), rsp(), kX0, {.t_end = 100.0, .step = 1e-3, .observe_every = 10});
    const double drift = relative_drift(traj, [](const SimplexPoint& x) { return x[0] * x[1] * x[2]; });
    b.at_most(1, "rsp replicator: drift of x1 x2 x3", drift, 1e-6);
}

void poincare_conservation(Builder& b) {
    const auto phi = Escort::power(2.0);
    const auto traj = integrate(phi, FitnessLandscape::matrix_escort(rsp_matrix(), phi), kX0,
                                {.t_end = 100.0, .step = 1e-3, .observe_every = 10});
    const double drift =
        relative_drift(traj, [](const SimplexPoint& x) { return 1.0 / x[0] + 1.0 / x[1] + 1.0 / x[2]; });
    b.at_most(2, "poincare rsp: drift of sum 1/x_i", drift, 1e-5);
}

void general_constant_of_motion(Builder& b) {
    const auto x_star = SimplexPoint::barycenter(3);
    double worst = 0.0;
    for (double q : {0.5, 3.0}) {
        const auto phi = Escort::power(q);
        const auto traj = integrate(phi, FitnessLandscape::matrix_escort(rsp_matrix(), phi), kX0,
                                    {.t_end = 100.0, .step = 1e-3, .observe_every = 10});
        worst = std::max(worst, relative_drift(traj, [&](const SimplexPoint& x) {
                             return integral_of_motion(phi, x_star, x);
                         }));
    }
    b.at_most(3, "power(0.5), power(3) rsp: drift of sum x*_i log_phi(x_i)", worst, 1e-5);
}

void lyapunov_monotonicity(Builder& b) {
    const SimplexPoint x0({0.6, 0.3, 0.1});
    const auto x_star = SimplexPoint::barycenter(3);
    const auto f = neg_identity_landscape(3);
    double worst_increase = 0.0;
    double worst_ratio = 0.0;
    for (const auto& phi : gradient_flow_escorts()) {
        const auto traj = integrate(phi, f, x0, {.t_end = 50.0, .step = 1e-3, .observe_every = 10});
        const auto series = lyapunov_series(phi, traj, x_star);
        for (std::size_t k = 1; k < series.size(); ++k) {
            worst_increase = std::max(worst_increase, series[k] - series[k - 1]);
        }
        worst_ratio = std::max(worst_ratio, series.back() / series.front());
    }
    b.at_most(4, "f=-x: largest per-step increase of D(x*||x)", worst_increase, 1e-10);
    b.below(4, "f=-x: D(x*||x(50)) / D(x*||x(0))", worst_ratio, 1e-3);
}

void fisher_theorem(Builder& b) {
    const auto f = neg_identity_landscape(3);
    double worst = 0.0;
    for (const auto& phi : gradient_flow_escorts()) {
        // 20 samples at t = 0, 0.25, ..., 4.75
        const auto traj = integrate(phi, f, SimplexPoint({0.6, 0.3, 0.1}),
                                    {.t_end = 4.75, .step = 1e-3, .observe_every = 250});
        for (const auto& x : traj.states) {
            worst = std::max(worst, relative_error(fisher_rate(phi, f, x), potential_rate_finite_difference(phi, f, x)));
        }
    }
    b.at_most(5, "f=-x: Z Var vs finite-difference dV/dt (relative)", worst, 1e-6);
}

void nash_rest_point(Builder& b) {
    double worst = 0.0;
    for (const auto& phi : {Escort::identity(), Escort::power(2.0), Escort::exponential(), Escort::constant(1.0)}) {
        for (double v : vector_field(phi, rsp(), SimplexPoint::barycenter(3))) {
            worst = std::max(worst, std::abs(v));
        }
    }
    b.at_most(6, "rsp barycenter: |field|_inf", worst, 1e-12);
}

void orthogonal_projection(Builder& b) {
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix a = Matrix::zeros(4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            a(i, j) = normal(rng);
        }
    }
    const auto f = FitnessLandscape::matrix_linear(a);
    double worst = 0.0;
    for (const auto& x : random_states(4, 100, 7)) {
        const auto fx = f(x.span());
        const double mean = std::accumulate(fx.begin(), fx.end(), 0.0) / 4.0;
        const auto v = vector_field(Escort::constant(1.0), f, x);
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(v[i] - (fx[i] - mean)));
        }
    }
    b.at_most(7, "constant escort: field vs f_i - mean(f)", worst, 1e-15);
}

void exponential_rest_point(Builder& b) {
    const auto phi = Escort::exponential();
    const auto f = exp_decay_landscape();
    const auto bary = SimplexPoint::barycenter(3);
    const auto traj = integrate(phi, f, bary, {.t_end = 10.0, .step = 1e-3});
    double drift = 0.0;
    for (const auto& x : traj.states) {
        drift = std::max(drift, sup_norm(x.span(), bary.span()));
    }
    b.at_most(8, "exp escort, f=e^-x: drift from barycenter", drift, 1e-8);

    double worst = 0.0;
    for (const auto& x : random_states(3, 100, 8)) {
        double z = 0.0;
        for (double xi : x.coords()) {
            z += std::exp(xi);
        }
        const auto v = vector_field(phi, f, x);
        for (std::size_t i = 0; i < 3; ++i) {
            worst = std::max(worst, std::abs(v[i] - (1.0 - 3.0 * std::exp(x[i]) / z)));
        }
    }
    b.at_most(8, "exp escort, f=e^-x: field vs 1 - n e^x_i / sum e^x_j", worst, 1e-12);
}

void gauge_invariance(Builder& b) {
    const std::vector<std::function<double(std::span<const double>)>> shifts{
        [](std::span<const double>) { return 0.0; },
        [](std::span<const double>) { return -3.5; },
        [](std::span<const double>) { return 100.0; },
        [](std::span<const double> x) { return std::inner_product(x.begin(), x.end(), x.begin(), 0.0); },
    };
    const auto states = random_states(3, 100, 9);
    double worst = 0.0;
    for (const auto& phi : {Escort::identity(), Escort::power(0.5), Escort::power(2.0), Escort::constant(1.0),
                            Escort::exponential()}) {
        for (const auto& g : shifts) {
            const auto shifted = gauge_shift(rsp(), g);
            for (const auto& x : states) {
                worst = std::max(worst, sup_norm(vector_field(phi, rsp(), x), vector_field(phi, shifted, x)));
            }
        }
    }
    b.at_most(9, "field of f vs f + g(x)1", worst, 1e-12);
}

void selection_intensity(Builder& b) {
    const auto scaled = integrate(Escort::scaled(2.0), rsp(), kX0, {.t_end = 10.0, .step = 1e-3, .observe_every = 10});
    const auto identity = integrate(Escort::identity(), rsp(), kX0, {.t_end = 20.0, .step = 1e-3, .observe_every = 20});
    double worst = scaled.size() == identity.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < std::min(scaled.size(), identity.size()); ++k) {
        worst = std::max(worst, sup_norm(scaled.states[k].span(), identity.states[k].span()));
    }
    b.at_most(10, "scaled(2) at t vs identity at 2t", worst, 1e-6);
}

void formal_solution(Builder& b) {
    const IntegrateOptions opts{.t_end = 5.0, .step = 1e-3, .observe_every = 10};
    double worst = 0.0;
    for (const auto& phi : {Escort::identity(), Escort::power(2.0)}) {
        const auto direct = integrate(phi, rsp(), kX0, opts);
        const auto formal = integrate_formal_solution(phi, rsp(), kX0, opts);
        if (direct.size() != formal.size()) {
            worst = INFINITY;
            break;
        }
        for (std::size_t k = 0; k < direct.size(); ++k) {
            worst = std::max(worst, sup_norm(direct.states[k].span(), formal.states[k].span()));
        }
    }
    b.at_most(11, "formal solution vs direct integration", worst, 1e-5);
}

void unit_power_limit(Builder& b) {
    const IntegrateOptions opts{.t_end = 10.0, .step = 1e-3, .observe_every = 10000};
    const auto reference = integrate(Escort::identity(), rsp(), kX0, opts).states.back();
    std::vector<double> deviations;
    for (double q : {1.1, 1.01, 1.001}) {
        deviations.push_back(sup_norm(integrate(Escort::power(q), rsp(), kX0, opts).states.back().span(),
                                      reference.span()));
    }
    // Largest ratio of consecutive deviations; strict decrease means below 1.
    double worst = 0.0;
    for (std::size_t k = 1; k < deviations.size(); ++k) {
        worst = std::max(worst, deviations[k] / deviations[k - 1]);
    }
    b.below(12, "q in {1.1, 1.01, 1.001}: max dev(q_k+1) / dev(q_k) at t=10", worst, 1.0);
}

void roundtrips(Builder& b) {
    const std::vector<Escort> families{Escort::identity(),       Escort::scaled(2.0),    Escort::power(0.5),
                                       Escort::power(2.0),       Escort::power(3.0),     Escort::constant(1.0),
                                       Escort::exponential(),    Escort::custom([](double v) { return v + v * v; })};
    double roundtrip = 0.0;
    for (const auto& phi : families) {
        for (double u = 0.05; u <= 1.0; u += 0.05) {
            roundtrip = std::max(roundtrip, std::abs(escort_exp(phi, escort_log(phi, u)) - u));
        }
    }
    b.at_most(13, "exp_phi(log_phi(u)) - u", roundtrip, 1e-8);

    double log_gap = 0.0;
    double divergence_gap = 0.0;
    const auto states = random_states(3, 20, 13, 0.05);
    for (const auto& phi : {Escort::power(0.0), Escort::power(0.5), Escort::power(2.0), Escort::power(3.0),
                            Escort::exponential(), Escort::constant(0.5)}) {
        for (double u = 0.05; u <= 2.0; u += 0.05) {
            log_gap = std::max(log_gap, std::abs(escort_log(phi, u) - escort_log_quadrature(phi, u)));
        }
        for (std::size_t k = 1; k < states.size(); ++k) {
            const auto& x = states[k - 1];
            const auto& y = states[k];
            divergence_gap = std::max(divergence_gap, std::abs(escort_divergence(phi, x.span(), y.span()) -
                                                               escort_divergence_quadrature(phi, x.span(), y.span())));
        }
    }
    b.at_most(13, "log_phi closed form vs quadrature", log_gap, 1e-7);
    b.at_most(13, "divergence closed form vs quadrature", divergence_gap, 1e-7);

    const double h = 1e-4;
    double hessian = 0.0;
    for (const auto& phi : {Escort::identity(), Escort::power(0.5), Escort::power(2.0), Escort::exponential()}) {
        for (const auto& x : random_states(3, 20, 14, 0.05)) {
            const auto metric = escort_metric(phi, x);
            for (std::size_t i = 0; i < 3; ++i) {
                Vector up = x.coords();
                Vector down = x.coords();
                up[i] += h;
                down[i] -= h;
                // D(x || x) = 0, so the central second difference needs only the two probes.
                const double second = (escort_divergence(phi, x.span(), up) + escort_divergence(phi, x.span(), down)) /
                                      (h * h);
                hessian = std::max(hessian, std::abs(second / metric[i] - 1.0));
            }
        }
    }
    b.at_most(13, "divergence Hessian vs metric (relative)", hessian, 1e-4);
}

void discrete_map(Builder& b) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> payoff(0.1, 5.0);
    double worst = 0.0;
    for (const auto& x : random_states(4, 100, 16)) {
        const Vector fx{payoff(rng), payoff(rng), payoff(rng), payoff(rng)};
        const auto f = FitnessLandscape::custom([fx](std::span<const double>) { return fx; });
        const auto next = discrete_step(Escort::constant(2.0), f, x);
        const double total = std::accumulate(fx.begin(), fx.end(), 0.0);
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(next[i] - fx[i] / total));
        }
    }
    b.at_most(14, "constant escort map vs f / sum f", worst, 1e-15);

    // Equal fitness on the support is fixed; unequal fitness on the support moves.
    double fixed_gap = 0.0;
    double smallest_move = INFINITY;
    for (const auto& x : random_states(3, 50, 17)) {
        const double c = payoff(rng);
        const auto equal = FitnessLandscape::custom([c](std::span<const double>) { return Vector{c, c, c}; });
        fixed_gap = std::max(fixed_gap, sup_norm(discrete_step(Escort::identity(), equal, x).span(), x.span()));
        const auto unequal =
            FitnessLandscape::custom([c](std::span<const double>) { return Vector{c, c + 1.0, c}; });
        smallest_move =
            std::min(smallest_move, sup_norm(discrete_step(Escort::identity(), unequal, x).span(), x.span()));
    }
    const SimplexPoint face({0.5, 0.5, 0.0});
    const auto on_support = FitnessLandscape::custom([](std::span<const double>) { return Vector{2.0, 2.0, 7.0}; });
    fixed_gap = std::max(fixed_gap, sup_norm(discrete_step(Escort::identity(), on_support, face).span(), face.span()));
    if (!(smallest_move > 1e-6)) {
        fixed_gap = INFINITY;
    }
    b.at_most(14, "identity map: equal-fitness states are fixed", fixed_gap, 1e-15);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(double tolerance_scale) {
    Builder b{tolerance_scale, {}};
    const std::vector<std::pair<int, void (*)(Builder&)>> criteria{
        {1, rsp_conservation},        {2, poincare_conservation},  {3, general_constant_of_motion},
        {4, lyapunov_monotonicity},   {5, fisher_theorem},         {6, nash_rest_point},
        {7, orthogonal_projection},   {8, exponential_rest_point}, {9, gauge_invariance},
        {10, selection_intensity},    {11, formal_solution},       {12, unit_power_limit},
        {13, roundtrips},             {14, discrete_map},
    };
    for (const auto& [id, run] : criteria) {
        try {
            run(b);
        } catch (const std::exception& e) {
            b.results.push_back({id, std::string("raised: ") + e.what(), INFINITY, 0.0, false});
        }
    }
    return b.results;
}

bool print_acceptance_report(std::ostream& out, const std::vector<CriterionResult>& results) {
    bool all = true;
    const auto flags = out.flags();
    for (const auto& r : results) {
        out << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << std::left << std::setw(64)
            << r.name << std::right << "  measured=" << std::scientific << std::setprecision(3) << r.measured
            << "  tol=" << r.tolerance << '\n';
        out.flags(flags);
        all = all && r.passed;
    }
    return all;
}

}  // namespace escortdyn
