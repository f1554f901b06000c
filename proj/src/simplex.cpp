#include "escortdyn/simplex.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "escortdyn/errors.hpp"

namespace escortdyn {

SimplexPoint::SimplexPoint(Vector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
        throw DomainError("simplex point needs at least 2 coordinates");
    }
    interior_ = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const double c = coords_[i];
        if (!std::isfinite(c) || c < 0.0) {
            throw DomainError("simplex coordinate " + std::to_string(i) + " is negative or not finite");
        }
        interior_ = interior_ && c > 0.0;
    }
    const double sum = std::accumulate(coords_.begin(), coords_.end(), 0.0);
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw DomainError("simplex coordinates sum to " + std::to_string(sum) + ", not 1");
    }
}

SimplexPoint SimplexPoint::barycenter(std::size_t n) {
    return SimplexPoint(Vector(n, 1.0 / static_cast<double>(n)));
}

}  // namespace escortdyn
