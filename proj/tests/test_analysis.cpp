#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "escortdyn/analysis.hpp"
#include "escortdyn/errors.hpp"
#include "escortdyn/geometry.hpp"
#include "support.hpp"

using namespace escortdyn;
using escortdyn::testing::random_interior;

namespace {

FitnessLandscape rsp() { return FitnessLandscape::matrix_linear(rsp_matrix()); }

FitnessLandscape zero_landscape() {
    return FitnessLandscape::custom([](std::span<const double> x) { return Vector(x.size(), 0.0); });
}

// f(x) = A x with symmetric A has potential x^T A x / 2.
FitnessLandscape symmetric_quadratic(const Matrix& a) {
    return FitnessLandscape::matrix_linear(a).with_potential([a](std::span<const double> x) {
        const auto ax = a.apply(x);
        return 0.5 * std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
    });
}

}  // namespace

TEST(Sampling, UniformSimplexPointsAreValidAndSpread) {
    std::mt19937_64 rng(40);
    Vector mean(4, 0.0);
    const int count = 20000;
    for (int k = 0; k < count; ++k) {
        const auto x = sample_uniform_simplex(4, rng);
        for (std::size_t i = 0; i < 4; ++i) {
            mean[i] += x[i] / count;
        }
    }
    for (double m : mean) {
        EXPECT_NEAR(m, 0.25, 0.01);
    }
}

TEST(RestPoint, Examples) {
    EXPECT_TRUE(is_rest_point(Escort::identity(), rsp(), SimplexPoint::barycenter(3), 1e-12));
    EXPECT_FALSE(is_rest_point(Escort::identity(), rsp(), SimplexPoint({0.5, 0.3, 0.2}), 1e-12));
    EXPECT_TRUE(is_rest_point(Escort::identity(), rsp(), SimplexPoint({1.0, 0.0, 0.0}), 1e-12));
    EXPECT_FALSE(is_rest_point(Escort::constant(1.0), rsp(), SimplexPoint({1.0, 0.0, 0.0}), 1e-12));
    EXPECT_TRUE(is_rest_point(Escort::exponential(), exp_decay_landscape(), SimplexPoint::barycenter(5), 1e-12));
}

TEST(Ess, NegIdentityBarycenterPasses) {
    const auto report = ess_check_sampled(neg_identity_landscape(3), SimplexPoint::barycenter(3), 10000, 0.1, 7);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.samples_tested, 10000u);
    EXPECT_GT(report.min_margin, 0.0);
    // Margin is |x - x*|^2 for this landscape.
    EXPECT_LE(report.min_margin, 0.01 + 1e-12);
}

TEST(Ess, GlobalSamplingAlsoPasses) {
    EXPECT_TRUE(ess_check_sampled(neg_identity_landscape(4), SimplexPoint::barycenter(4), 5000).passed());
}

TEST(Ess, ZeroLandscapeFails) {
    const auto report = ess_check_sampled(zero_landscape(), SimplexPoint::barycenter(3), 100);
    EXPECT_FALSE(report.passed());
    EXPECT_EQ(report.min_margin, 0.0);
}

TEST(Ess, RspBarycenterIsNeutral) {
    const auto report = ess_check_sampled(rsp(), SimplexPoint::barycenter(3), 2000, 0.2, 3);
    EXPECT_FALSE(report.passed());
    ASSERT_TRUE(report.failed_at.has_value());
    EXPECT_LE(std::abs(report.min_margin), 1e-12);
}

TEST(Ess, RadiusIsRespected) {
    const auto x_star = SimplexPoint::barycenter(3);
    const auto report = ess_check_sampled(neg_identity_landscape(3), x_star, 2000, 0.05, 11);
    // min_margin is the smallest squared distance; it cannot exceed the radius squared.
    EXPECT_LE(report.min_margin, 0.05 * 0.05);
    EXPECT_THROW(ess_check_sampled(rsp(), x_star, 10, -1.0), ConfigError);
}

TEST(Lyapunov, NonIncreasingForEscortEss) {
    const SimplexPoint x0({0.6, 0.3, 0.1});
    const auto x_star = SimplexPoint::barycenter(3);
    for (const auto& phi : {Escort::identity(), Escort::power(2.0), Escort::power(0.5), Escort::exponential()}) {
        const auto f = neg_identity_landscape(3);
        const auto traj = integrate(phi, f, x0, {.t_end = 10.0, .step = 1e-2});
        const auto series = lyapunov_series(phi, traj, x_star);
        ASSERT_EQ(series.size(), traj.size());
        EXPECT_TRUE(is_non_increasing(series, 1e-12)) << phi.describe();
        EXPECT_LT(series.back(), series.front());
        EXPECT_NEAR(series.front(), escort_divergence(phi, x_star, x0), 1e-15);
    }
}

TEST(Lyapunov, ConstantUnderRspReplicator) {
    const auto traj = integrate(Escort::identity(), rsp(), SimplexPoint({0.6, 0.3, 0.1}), {.t_end = 10.0, .step = 1e-3});
    const auto series = lyapunov_series(Escort::identity(), traj, SimplexPoint::barycenter(3));
    for (double v : series) {
        EXPECT_NEAR(v, series.front(), 1e-8);
    }
}

TEST(Lyapunov, NonIncreasingHelper) {
    const std::vector<double> down{3.0, 2.0, 2.0, 1.0};
    const std::vector<double> bump{3.0, 2.0, 2.1, 1.0};
    EXPECT_TRUE(is_non_increasing(down, 0.0));
    EXPECT_FALSE(is_non_increasing(bump, 0.0));
    EXPECT_TRUE(is_non_increasing(bump, 0.2));
    EXPECT_TRUE(is_non_increasing(std::vector<double>{}, 0.0));
}

TEST(FisherRate, MatchesPotentialDerivative) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix a = Matrix::zeros(3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            a(i, j) = a(j, i) = normal(rng);
        }
    }
    const std::vector<FitnessLandscape> landscapes{neg_identity_landscape(3), symmetric_quadratic(a)};
    for (const auto& f : landscapes) {
        ASSERT_TRUE(check_potential(f, 3).ok);
        for (const auto& phi : {Escort::identity(), Escort::power(0.5), Escort::power(2.0), Escort::constant(1.0)}) {
            for (int k = 0; k < 100; ++k) {
                const auto x = random_interior(3, rng, 1e-2);
                const double rate = fisher_rate(phi, f, x);
                EXPECT_GE(rate, 0.0);
                EXPECT_NEAR(rate, potential_rate_finite_difference(phi, f, x), 1e-6) << phi.describe();
            }
        }
    }
}

TEST(FisherRate, RequiresPotential) {
    EXPECT_THROW(fisher_rate(Escort::identity(), rsp(), SimplexPoint::barycenter(3)), ConfigError);
    EXPECT_THROW(potential_rate_finite_difference(Escort::identity(), rsp(), SimplexPoint::barycenter(3)),
                 ConfigError);
}

TEST(FisherRate, ZeroAtRestPoint) {
    EXPECT_NEAR(fisher_rate(Escort::power(2.0), neg_identity_landscape(3), SimplexPoint::barycenter(3)), 0.0, 1e-15);
}

TEST(PotentialCheck, DetectsWrongPotential) {
    EXPECT_TRUE(check_potential(neg_identity_landscape(4), 4).ok);
    const auto wrong = neg_identity_landscape(3).with_potential(
        [](std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); });
    const auto result = check_potential(wrong, 3);
    EXPECT_FALSE(result.ok);
    EXPECT_GT(result.max_abs_error, 0.1);
}

TEST(IntegralOfMotion, Examples) {
    const auto bary = SimplexPoint::barycenter(3);
    EXPECT_NEAR(integral_of_motion(Escort::identity(), bary, bary), std::log(1.0 / 3.0), 1e-15);
    // log_phi(u) = 1 - 1/u for q = 2.
    EXPECT_NEAR(integral_of_motion(Escort::power(2.0), bary, bary), -2.0, 1e-15);
    const SimplexPoint x({0.5, 0.3, 0.2});
    const double expected = (3.0 - (1.0 / 0.5 + 1.0 / 0.3 + 1.0 / 0.2)) / 3.0;
    EXPECT_NEAR(integral_of_motion(Escort::power(2.0), bary, x), expected, 1e-14);
    EXPECT_EQ(integral_of_motion(Escort::identity(), bary, SimplexPoint({0.0, 0.5, 0.5})), -INFINITY);
}

TEST(IntegralOfMotion, DivergenceIsEntropyOffsetOfIntegral) {
    // D(x* || x) = -H(x*) - I(x) for the identity escort.
    std::mt19937_64 rng(42);
    const SimplexPoint x_star({0.2, 0.3, 0.5});
    double entropy = 0.0;
    for (double p : x_star.coords()) {
        entropy -= p * std::log(p);
    }
    for (int k = 0; k < 100; ++k) {
        const auto x = random_interior(3, rng);
        EXPECT_NEAR(escort_divergence(Escort::identity(), x_star, x) + entropy,
                    -integral_of_motion(Escort::identity(), x_star, x), 1e-12);
    }
}
