#include "escortdyn/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "escortdyn/analysis.hpp"
#include "escortdyn/errors.hpp"

namespace escortdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_size(const Matrix& a, std::size_t n) {
    if (a.size() != n) {
        throw DimensionError("payoff matrix is " + std::to_string(a.size()) + "x" + std::to_string(a.size()) +
                             " but the state has " + std::to_string(n) + " coordinates");
    }
}

}  // namespace

Matrix::Matrix(std::size_t n, Vector row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n_ * n_) {
        throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                             std::to_string(n_ * n_));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    const std::size_t n = rows.size();
    Vector data;
    data.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw DimensionError("matrix rows must have " + std::to_string(n) + " entries");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(n, std::move(data));
}

std::vector<Vector> Matrix::rows() const {
    std::vector<Vector> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    }
    return out;
}

Vector Matrix::apply(std::span<const double> v) const {
    if (v.size() != n_) {
        throw DimensionError("cannot apply a " + std::to_string(n_) + "x" + std::to_string(n_) +
                             " matrix to a vector of size " + std::to_string(v.size()));
    }
    Vector out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            acc += (*this)(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

Matrix rsp_matrix() {
    return Matrix::from_rows({{0.0, 1.0, -1.0}, {-1.0, 0.0, 1.0}, {1.0, -1.0, 0.0}});
}

FitnessLandscape FitnessLandscape::matrix_linear(Matrix a) { return FitnessLandscape(landscape::MatrixLinear{std::move(a)}); }

FitnessLandscape FitnessLandscape::matrix_escort(Matrix a, Escort phi) {
    if (!phi.is_scalar()) {
        throw ConfigError("escort-composed landscapes need a scalar escort");
    }
    return FitnessLandscape(landscape::MatrixEscort{std::move(a), std::move(phi)});
}

FitnessLandscape FitnessLandscape::matrix_escort_log(Matrix a, Escort phi) {
    if (!phi.is_scalar()) {
        throw ConfigError("escort-log landscapes need a scalar escort");
    }
    return FitnessLandscape(landscape::MatrixEscortLog{std::move(a), std::move(phi)});
}

FitnessLandscape FitnessLandscape::custom(std::function<Vector(std::span<const double>)> fn) {
    if (!fn) {
        throw ConfigError("custom landscape needs a function");
    }
    return FitnessLandscape(landscape::Custom{std::move(fn)});
}

FitnessLandscape FitnessLandscape::with_potential(Potential v) const {
    FitnessLandscape copy = *this;
    copy.potential_ = std::move(v);
    return copy;
}

Vector FitnessLandscape::operator()(std::span<const double> x) const {
    Vector out = std::visit(overloaded{
                                [&](const landscape::MatrixLinear& m) { return m.a.apply(x); },
                                [&](const landscape::MatrixEscort& m) {
                                    require_size(m.a, x.size());
                                    return m.a.apply(m.phi.weights(x));
                                },
                                [&](const landscape::MatrixEscortLog& m) {
                                    require_size(m.a, x.size());
                                    Vector logs(x.size());
                                    for (std::size_t i = 0; i < x.size(); ++i) {
                                        logs[i] = escort_log(m.phi, x[i]);
                                    }
                                    return m.a.apply(logs);
                                },
                                [&](const landscape::Custom& c) { return c.fn(x); },
                            },
                            form_);
    if (out.size() != x.size()) {
        throw DimensionError("landscape returned " + std::to_string(out.size()) + " values for a state of size " +
                             std::to_string(x.size()));
    }
    for (double v : out) {
        if (!std::isfinite(v)) {
            throw DomainError("fitness is not finite");
        }
    }
    return out;
}

double FitnessLandscape::potential(std::span<const double> x) const {
    if (!potential_) {
        throw ConfigError("fitness landscape declares no potential");
    }
    return potential_(x);
}

FitnessLandscape neg_identity_landscape(std::size_t n) {
    Matrix a = Matrix::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = -1.0;
    }
    return FitnessLandscape::matrix_linear(std::move(a)).with_potential([](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) {
            s += v * v;
        }
        return -0.5 * s;
    });
}

FitnessLandscape exp_decay_landscape() {
    return FitnessLandscape::custom([](std::span<const double> x) {
        Vector out(x.size());
        std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::exp(-v); });
        return out;
    });
}

PotentialCheck check_potential(const FitnessLandscape& f, std::size_t n, std::size_t samples, std::uint64_t seed,
                               double tolerance) {
    constexpr double h = 1e-5;
    std::mt19937_64 rng(seed);
    PotentialCheck result;
    for (std::size_t s = 0; s < samples; ++s) {
        const SimplexPoint x = sample_uniform_simplex(n, rng);
        const Vector fx = f(x.span());
        Vector probe = x.coords();
        for (std::size_t i = 0; i < n; ++i) {
            const double saved = probe[i];
            probe[i] = saved + h;
            const double up = f.potential(probe);
            probe[i] = saved - h;
            const double down = f.potential(probe);
            probe[i] = saved;
            result.max_abs_error = std::max(result.max_abs_error, std::abs((up - down) / (2.0 * h) - fx[i]));
        }
    }
    result.ok = result.max_abs_error <= tolerance;
    return result;
}

}  // namespace escortdyn
