#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "escortdyn/escort.hpp"
#include "escortdyn/landscape.hpp"
#include "escortdyn/simplex.hpp"

namespace escortdyn::testing {

// Interior simplex points with every coordinate at least `floor`.
inline SimplexPoint random_interior(std::size_t n, std::mt19937_64& rng, double floor = 1e-3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector x(n);
    double sum = 0.0;
    for (auto& v : x) {
        v = -std::log(1.0 - u(rng));
        sum += v;
    }
    const double scale = 1.0 - floor * static_cast<double>(n);
    double total = 0.0;
    for (auto& v : x) {
        v = floor + scale * v / sum;
        total += v;
    }
    for (auto& v : x) {
        v /= total;
    }
    return SimplexPoint(std::move(x));
}

inline std::vector<Escort> scalar_families() {
    return {Escort::identity(),      Escort::scaled(2.5),   Escort::power(0.0),
            Escort::power(0.5),      Escort::power(2.0),    Escort::power(3.0),
            Escort::constant(1.0),   Escort::constant(0.5), Escort::exponential(),
            Escort::custom([](double v) { return v + v * v; }, "v+v^2")};
}

inline double sup_distance(const SimplexPoint& a, const SimplexPoint& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace escortdyn::testing
