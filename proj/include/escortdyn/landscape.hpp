#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "escortdyn/escort.hpp"
#include "escortdyn/simplex.hpp"

namespace escortdyn {

// Dense row-major square matrix; game sizes here are small.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t n, Vector row_major);

    static Matrix zeros(std::size_t n) { return Matrix(n, Vector(n * n, 0.0)); }
    static Matrix identity(std::size_t n);
    // Throws DimensionError unless rows form a square matrix.
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Vector& data() const noexcept { return data_; }
    std::vector<Vector> rows() const;

    Vector apply(std::span<const double> v) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    Vector data_;
};

// The rock-scissors-paper zero-sum game.
Matrix rsp_matrix();

namespace landscape {

// f(x) = A x
struct MatrixLinear {
    Matrix a;
};

// f(x) = A phi(x)
struct MatrixEscort {
    Matrix a;
    Escort phi;
};

// f(x) = A log_phi(x)
struct MatrixEscortLog {
    Matrix a;
    Escort phi;
};

struct Custom {
    std::function<Vector(std::span<const double>)> fn;
};

}  // namespace landscape

using Potential = std::function<double(std::span<const double>)>;

/// Fitness landscape x -> f(x), optionally declaring a potential V with
/// grad V = f. The potential is taken on trust; check_potential verifies it.
class FitnessLandscape {
public:
    using Form = std::variant<landscape::MatrixLinear, landscape::MatrixEscort, landscape::MatrixEscortLog,
                              landscape::Custom>;

    static FitnessLandscape matrix_linear(Matrix a);
    static FitnessLandscape matrix_escort(Matrix a, Escort phi);
    static FitnessLandscape matrix_escort_log(Matrix a, Escort phi);
    static FitnessLandscape custom(std::function<Vector(std::span<const double>)> fn);

    // Copy of this landscape declaring V as its potential.
    FitnessLandscape with_potential(Potential v) const;

    // Throws DimensionError on a size mismatch and DomainError when the
    // value is not finite.
    Vector operator()(std::span<const double> x) const;

    const Form& form() const noexcept { return form_; }
    bool has_potential() const noexcept { return static_cast<bool>(potential_); }
    // Throws ConfigError when no potential is declared.
    double potential(std::span<const double> x) const;

private:
    explicit FitnessLandscape(Form f) : form_(std::move(f)) {}
    Form form_;
    Potential potential_;
};

// f(x) = -x, the Euclidean gradient of V(x) = -|x|^2 / 2.
FitnessLandscape neg_identity_landscape(std::size_t n);

// f(x) = (e^{-x_1}, ..., e^{-x_n}).
FitnessLandscape exp_decay_landscape();

struct PotentialCheck {
    double max_abs_error = 0.0;
    bool ok = false;
};

// Compares the central-difference gradient of the declared potential with f at
// uniformly sampled interior points of the n-simplex.
PotentialCheck check_potential(const FitnessLandscape& f, std::size_t n, std::size_t samples = 100,
                               std::uint64_t seed = 0, double tolerance = 1e-5);

}  // namespace escortdyn
