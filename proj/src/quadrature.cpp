#include "escortdyn/quadrature.hpp"

#include <cmath>
#include <string>

#include "escortdyn/errors.hpp"

namespace escortdyn::quadrature {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;
    bool exhausted = false;

    double eval(double x) const {
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw DomainError("integrand is not finite at " + std::to_string(x));
        }
        return y;
    }

    // Classic recursive refinement with the Richardson correction term.
    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) {
            return left + right + delta / 15.0;
        }
        if (depth >= max_depth) {
            exhausted = true;
            return left + right + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, SimpsonOptions options) {
    if (a == b) {
        return 0.0;
    }
    if (b < a) {
        return -adaptive_simpson(f, b, a, options);
    }
    Simpson s{f, options.max_depth};
    const double fa = s.eval(a);
    const double fb = s.eval(b);
    const double fm = s.eval(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double result = s.refine(a, b, fa, fm, fb, whole, options.abs_tolerance, 0);
    if (s.exhausted) {
        throw QuadratureError("adaptive Simpson reached max depth on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
    return result;
}

}  // namespace escortdyn::quadrature
