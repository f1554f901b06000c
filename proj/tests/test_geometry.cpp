#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "escortdyn/errors.hpp"
#include "escortdyn/geometry.hpp"
#include "support.hpp"

using namespace escortdyn;
using escortdyn::testing::random_interior;

namespace {

// Kullback-Leibler divergence written out directly.
double kl(std::span<const double> x, std::span<const double> y) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0) {
            d += x[i] * std::log(x[i] / y[i]);
        }
    }
    return d;
}

std::vector<Escort> non_decreasing_families() {
    return {Escort::identity(), Escort::scaled(2.0), Escort::power(0.5), Escort::power(2.0),
            Escort::power(3.0), Escort::constant(1.0), Escort::exponential()};
}

}  // namespace

TEST(EscortMetric, Examples) {
    const auto m = escort_metric(Escort::identity(), SimplexPoint({0.5, 0.5}));
    EXPECT_DOUBLE_EQ(m[0], 2.0);
    EXPECT_DOUBLE_EQ(m[1], 2.0);
    std::mt19937_64 rng(10);
    const auto e = escort_metric(Escort::constant(1.0), random_interior(4, rng));
    for (double d : e.diag()) {
        EXPECT_EQ(d, 1.0);
    }
    const auto p = escort_metric(Escort::power(2.0), SimplexPoint({0.5, 0.25, 0.25}));
    EXPECT_DOUBLE_EQ(p[0], 4.0);
    EXPECT_DOUBLE_EQ(p[1], 16.0);
    EXPECT_DOUBLE_EQ(p[2], 16.0);
}

TEST(EscortMetric, VectorValuedUsesComponentwiseEscort) {
    const auto psi = Escort::vector_valued([](std::span<const double> x) { return Vector{2.0 * x[0], 4.0 * x[1]}; });
    const auto m = escort_metric(psi, SimplexPoint({0.5, 0.5}));
    EXPECT_DOUBLE_EQ(m[0], 1.0);
    EXPECT_DOUBLE_EQ(m[1], 0.5);
}

TEST(EscortMetric, RejectsBoundaryAndNonPositive) {
    EXPECT_THROW(escort_metric(Escort::identity(), SimplexPoint({1.0, 0.0})), DomainError);
    EXPECT_THROW(DiagonalMetric({1.0, 0.0}), DomainError);
    EXPECT_THROW(escort_metric(Escort::custom([](double v) { return v - 0.4; }), SimplexPoint({0.3, 0.7})),
                 DomainError);
}

TEST(MetricInnerProduct, Examples) {
    const std::vector<double> a{0.3, -1.2, 2.0};
    const std::vector<double> b{1.5, 0.5, -0.25};
    EXPECT_DOUBLE_EQ(metric_inner_product(DiagonalMetric({1.0, 1.0, 1.0}), a, b), 0.45 - 0.6 - 0.5);
    EXPECT_DOUBLE_EQ(metric_inner_product(DiagonalMetric({2.0, 2.0}), std::vector<double>{1.0, 0.0},
                                          std::vector<double>{1.0, 0.0}),
                     2.0);
    const std::vector<double> ones{1.0, 1.0, 1.0};
    EXPECT_DOUBLE_EQ(metric_inner_product(DiagonalMetric({4.0, 16.0, 16.0}), ones, ones), 36.0);
    EXPECT_THROW(metric_inner_product(DiagonalMetric({1.0, 1.0}), a, b), DimensionError);
}

TEST(EscortDivergence, Examples) {
    const SimplexPoint x({0.5, 0.5});
    const SimplexPoint y({0.25, 0.75});
    for (const auto& phi : non_decreasing_families()) {
        EXPECT_EQ(escort_divergence(phi, x, x), 0.0) << phi.describe();
    }
    EXPECT_NEAR(escort_divergence(Escort::identity(), x, y), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
    EXPECT_DOUBLE_EQ(escort_divergence(Escort::constant(1.0), SimplexPoint({1.0, 0.0}), SimplexPoint({0.0, 1.0})),
                     1.0);
}

TEST(EscortDivergence, BoundaryConventions) {
    // 0 log(0 / y) = 0
    EXPECT_NEAR(escort_divergence(Escort::identity(), SimplexPoint({1.0, 0.0}), SimplexPoint({0.5, 0.5})),
                std::log(2.0), 1e-15);
    EXPECT_THROW(escort_divergence(Escort::identity(), SimplexPoint({0.5, 0.5}), SimplexPoint({1.0, 0.0})),
                 DivergenceInfinite);
    EXPECT_THROW(escort_divergence(Escort::power(2.0), SimplexPoint({1.0, 0.0}), SimplexPoint({0.5, 0.5})),
                 DivergenceInfinite);
    // log_phi(0) is finite for q < 1, so the divergence is too.
    EXPECT_TRUE(std::isfinite(
        escort_divergence(Escort::power(0.5), SimplexPoint({0.5, 0.5}), SimplexPoint({1.0, 0.0}))));
    EXPECT_THROW(escort_divergence(Escort::identity(), std::vector<double>{0.5, 0.5}, std::vector<double>{1.0}),
                 DimensionError);
}

TEST(EscortDivergence, IdentityIsKullbackLeibler) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto x = random_interior(5, rng, 1e-4);
        const auto y = random_interior(5, rng, 1e-4);
        EXPECT_NEAR(escort_divergence(Escort::identity(), x, y), kl(x.span(), y.span()), 1e-12);
    }
}

TEST(EscortDivergence, PoincareClosedForm) {
    // phi = u^2: sum_i log(y_i / x_i) + x_i / y_i - 1, worked out by hand.
    const SimplexPoint x({0.5, 0.25, 0.25});
    const SimplexPoint y({0.2, 0.3, 0.5});
    double expected = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        expected += std::log(y[i] / x[i]) + x[i] / y[i] - 1.0;
    }
    EXPECT_NEAR(escort_divergence(Escort::power(2.0), x, y), expected, 1e-14);
}

TEST(EscortDivergence, NonnegativeAndZeroOnlyOnDiagonal) {
    std::mt19937_64 rng(12);
    for (const auto& phi : non_decreasing_families()) {
        for (int k = 0; k < 1000; ++k) {
            const auto x = random_interior(4, rng);
            const auto y = random_interior(4, rng);
            const double d = escort_divergence(phi, x, y);
            ASSERT_GT(d, 0.0) << phi.describe();
            ASSERT_EQ(escort_divergence(phi, x, x), 0.0);
        }
    }
}

TEST(EscortDivergence, ClosedFormMatchesNestedQuadrature) {
    std::mt19937_64 rng(13);
    for (const auto& phi : {Escort::identity(), Escort::power(0.5), Escort::power(2.0), Escort::exponential(),
                            Escort::constant(1.0)}) {
        for (int k = 0; k < 10; ++k) {
            const auto x = random_interior(3, rng, 0.02);
            const auto y = random_interior(3, rng, 0.02);
            EXPECT_NEAR(escort_divergence(phi, x, y), escort_divergence_quadrature(phi, x.span(), y.span()), 1e-7)
                << phi.describe();
        }
    }
}

TEST(EscortDivergence, CustomUsesQuadrature) {
    const auto custom_identity = Escort::custom([](double v) { return v; });
    const SimplexPoint x({0.5, 0.3, 0.2});
    const SimplexPoint y({0.2, 0.2, 0.6});
    EXPECT_NEAR(escort_divergence(custom_identity, x, y), kl(x.span(), y.span()), 1e-7);
}

TEST(EscortDivergence, HessianIsMetric) {
    const double h = 1e-4;
    std::mt19937_64 rng(14);
    for (const auto& phi : {Escort::identity(), Escort::power(2.0)}) {
        for (int k = 0; k < 20; ++k) {
            const auto x = random_interior(3, rng, 0.05);
            const auto metric = escort_metric(phi, x);
            for (std::size_t i = 0; i < 3; ++i) {
                Vector up = x.coords();
                Vector down = x.coords();
                up[i] += h;
                down[i] -= h;
                // D(x || x) = 0, so the central second difference needs only the two probes.
                const double second =
                    (escort_divergence(phi, x.span(), up) + escort_divergence(phi, x.span(), down)) / (h * h);
                EXPECT_NEAR(second / metric[i], 1.0, 1e-4) << phi.describe();
            }
        }
    }
}

TEST(SphereCoordinate, Examples) {
    const auto s = sphere_coordinate(Escort::identity(), SimplexPoint({0.25, 0.75}));
    EXPECT_DOUBLE_EQ(s[0], 1.0);
    EXPECT_DOUBLE_EQ(s[1], std::sqrt(3.0));
    std::mt19937_64 rng(15);
    const auto x = random_interior(5, rng);
    const auto c = sphere_coordinate(Escort::constant(1.0), x);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(c[i], x[i]);
    }
    for (int k = 0; k < 50; ++k) {
        const auto v = sphere_coordinate(Escort::identity(), random_interior(6, rng));
        double norm2 = 0.0;
        for (double vi : v) {
            norm2 += vi * vi;
        }
        EXPECT_NEAR(std::sqrt(norm2), 2.0, 1e-14);
    }
}

TEST(SphereCoordinate, Anchors) {
    const SimplexPoint x({0.36, 0.64});
    // phi(v) = v vanishes at 0, so the custom route anchors at 1: 2 sqrt(u) - 2.
    const auto anchored_at_one = sphere_coordinate(Escort::custom([](double v) { return v; }), x);
    EXPECT_NEAR(anchored_at_one[0], 1.2 - 2.0, 1e-9);
    // phi(v) = 1 + v is positive at 0: 2 (sqrt(1 + u) - 1).
    const auto anchored_at_zero = sphere_coordinate(Escort::custom([](double v) { return 1.0 + v; }), x);
    EXPECT_NEAR(anchored_at_zero[1], 2.0 * (std::sqrt(1.64) - 1.0), 1e-9);
    EXPECT_NEAR(sphere_coordinate(Escort::power(2.0), x)[0], std::log(0.36), 1e-15);
    EXPECT_NEAR(sphere_coordinate(Escort::power(4.0), x)[0], -(1.0 / 0.36 - 1.0), 1e-14);
    EXPECT_THROW(sphere_coordinate(Escort::identity(), SimplexPoint({1.0, 0.0})), DomainError);
}

TEST(SphereCoordinate, JacobianPullsBackEscortMetric) {
    // (dF/du)^2 = 1/phi(u): the transformation is an isometry onto Euclidean space.
    const double h = 1e-6;
    for (const auto& phi : {Escort::identity(), Escort::scaled(3.0), Escort::power(0.5), Escort::power(2.0),
                            Escort::power(3.0), Escort::constant(2.0), Escort::exponential(),
                            Escort::custom([](double v) { return v + v * v; })}) {
        for (double u : {0.15, 0.4, 0.7}) {
            const auto up = sphere_coordinate(phi, SimplexPoint({u + h, 1.0 - u - h}));
            const auto down = sphere_coordinate(phi, SimplexPoint({u - h, 1.0 - u + h}));
            const double derivative = (up[0] - down[0]) / (2.0 * h);
            EXPECT_NEAR(derivative * derivative * phi(u), 1.0, 1e-6) << phi.describe() << " u=" << u;
        }
    }
}

TEST(GeodesicDistance, Examples) {
    const SimplexPoint half({0.5, 0.5});
    EXPECT_EQ(geodesic_distance_identity(half, half), 0.0);
    EXPECT_NEAR(geodesic_distance_identity(SimplexPoint({1.0, 0.0}), SimplexPoint({0.0, 1.0})), std::numbers::pi,
                1e-15);
}

TEST(GeodesicDistance, MetricAxioms) {
    std::mt19937_64 rng(16);
    for (int k = 0; k < 1000; ++k) {
        const auto p = random_interior(4, rng, 0.0);
        const auto q = random_interior(4, rng, 0.0);
        const auto r = random_interior(4, rng, 0.0);
        const double pq = geodesic_distance_identity(p, q);
        EXPECT_EQ(pq, geodesic_distance_identity(q, p));
        EXPECT_EQ(geodesic_distance_identity(p, p), 0.0);
        EXPECT_LE(geodesic_distance_identity(p, r), pq + geodesic_distance_identity(q, r) + 1e-12);
    }
}

TEST(GeodesicDistance, MatchesArccosForm) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 100; ++k) {
        const auto p = random_interior(3, rng, 0.0);
        const auto q = random_interior(3, rng, 0.0);
        double overlap = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            overlap += std::sqrt(p[i] * q[i]);
        }
        EXPECT_NEAR(geodesic_distance_identity(p, q), 2.0 * std::acos(std::min(overlap, 1.0)), 1e-7);
    }
}
