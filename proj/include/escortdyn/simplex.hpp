#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace escortdyn {

using Vector = std::vector<double>;

// A population state: n >= 2 nonnegative coordinates summing to one.
class SimplexPoint {
public:
    static constexpr double kSumTolerance = 1e-9;

    // Throws DomainError if coords is not a simplex point.
    explicit SimplexPoint(Vector coords);

    // Uniform distribution over n types.
    static SimplexPoint barycenter(std::size_t n);

    std::size_t size() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const Vector& coords() const noexcept { return coords_; }
    std::span<const double> span() const noexcept { return coords_; }

    // True when every coordinate is strictly positive.
    bool interior() const noexcept { return interior_; }

    friend bool operator==(const SimplexPoint& a, const SimplexPoint& b) { return a.coords_ == b.coords_; }

private:
    Vector coords_;
    bool interior_ = false;
};

}  // namespace escortdyn
