#include "escortdyn/escort.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "escortdyn/errors.hpp"
#include "escortdyn/quadrature.hpp"

namespace escortdyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr quadrature::SimpsonOptions kLogQuadrature{1e-10, 50};

bool unit_power(double q) { return std::abs(q - 1.0) < Escort::kUnitPowerThreshold; }

void require_scalar(const Escort& phi, const char* what) {
    if (!phi.is_scalar()) {
        throw DomainError(std::string(what) + " is not defined for vector-valued escorts");
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Escort Escort::scaled(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ConfigError("scaled escort needs beta > 0, got " + format_double(beta));
    }
    return Escort(family::Scaled{beta});
}

Escort Escort::power(double q) {
    if (!std::isfinite(q)) {
        throw ConfigError("power escort exponent must be finite");
    }
    return Escort(family::Power{q});
}

Escort Escort::constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ConfigError("constant escort needs c > 0, got " + format_double(c));
    }
    return Escort(family::Constant{c});
}

Escort Escort::custom(std::function<double(double)> fn, std::string name) {
    if (!fn) {
        throw ConfigError("custom escort needs a function");
    }
    return Escort(family::Custom{std::move(fn), std::move(name)});
}

Escort Escort::vector_valued(std::function<Vector(std::span<const double>)> fn, std::string name) {
    if (!fn) {
        throw ConfigError("vector-valued escort needs a function");
    }
    return Escort(family::VectorValued{std::move(fn), std::move(name)});
}

double Escort::operator()(double u) const {
    return std::visit(
        overloaded{
            [u](const family::Identity&) { return u; },
            [u](const family::Scaled& s) { return s.beta * u; },
            [u](const family::Power& p) {
                if (u < 0.0 || (u == 0.0 && p.q <= 0.0)) {
                    throw DomainError("power escort q=" + format_double(p.q) + " undefined at " + format_double(u));
                }
                return std::pow(u, p.q);
            },
            [](const family::Constant& c) { return c.c; },
            [u](const family::Exponential&) { return std::exp(u); },
            [u](const family::Custom& c) {
                const double v = c.fn(u);
                if (!std::isfinite(v)) {
                    throw DomainError("escort '" + c.name + "' is not finite at " + format_double(u));
                }
                return v;
            },
            [](const family::VectorValued&) -> double {
                throw DomainError("vector-valued escort has no scalar evaluation");
            },
        },
        family_);
}

Vector Escort::weights(std::span<const double> x) const {
    if (const auto* vv = std::get_if<family::VectorValued>(&family_)) {
        Vector w = vv->fn(x);
        if (w.size() != x.size()) {
            throw DimensionError("vector-valued escort returned " + std::to_string(w.size()) +
                                 " components for a state of size " + std::to_string(x.size()));
        }
        for (double wi : w) {
            if (!std::isfinite(wi) || wi <= 0.0) {
                throw DomainError("vector-valued escort '" + vv->name + "' is not strictly positive");
            }
        }
        return w;
    }
    Vector w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        w[i] = (*this)(x[i]);
    }
    return w;
}

std::string Escort::describe() const {
    return std::visit(overloaded{
                          [](const family::Identity&) -> std::string { return "identity"; },
                          [](const family::Scaled& s) { return "scaled(beta=" + format_double(s.beta) + ")"; },
                          [](const family::Power& p) { return "power(q=" + format_double(p.q) + ")"; },
                          [](const family::Constant& c) { return "constant(c=" + format_double(c.c) + ")"; },
                          [](const family::Exponential&) -> std::string { return "exponential"; },
                          [](const family::Custom& c) { return c.name; },
                          [](const family::VectorValued& v) { return v.name; },
                      },
                      family_);
}

namespace detail {

double weighted_mean(std::span<const double> weights, std::span<const double> f) {
    if (weights.size() != f.size()) {
        throw DimensionError("fitness has " + std::to_string(f.size()) + " entries, state has " +
                             std::to_string(weights.size()));
    }
    double z = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        z += weights[i];
        acc += weights[i] * f[i];
    }
    if (!(z > 0.0)) {
        throw DomainError("partition function is not positive");
    }
    return acc / z;
}

}  // namespace detail

double partition_function(const Escort& phi, const SimplexPoint& x) {
    const Vector w = phi.weights(x.span());
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(z > 0.0)) {
        throw DomainError("partition function is not positive for escort " + phi.describe());
    }
    return z;
}

SimplexPoint escort_distribution(const Escort& phi, const SimplexPoint& x) {
    Vector w = phi.weights(x.span());
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(z > 0.0)) {
        throw DomainError("partition function is not positive for escort " + phi.describe());
    }
    for (double& wi : w) {
        wi /= z;
    }
    return SimplexPoint(std::move(w));
}

double escort_expectation(const Escort& phi, const SimplexPoint& x, std::span<const double> f) {
    return detail::weighted_mean(phi.weights(x.span()), f);
}

double escort_variance(const Escort& phi, const SimplexPoint& x, std::span<const double> f) {
    const Vector w = phi.weights(x.span());
    const double mean = detail::weighted_mean(w, f);
    Vector sq(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        sq[i] = (f[i] - mean) * (f[i] - mean);
    }
    return detail::weighted_mean(w, sq);
}

double escort_log_quadrature(const Escort& phi, double u) {
    require_scalar(phi, "escort logarithm");
    if (!std::isfinite(u)) {
        throw DomainError("escort logarithm argument is not finite");
    }
    auto integrand = [&phi](double v) {
        const double p = phi(v);
        if (!(p > 0.0)) {
            throw DomainError("escort " + phi.describe() + " is not positive at " + format_double(v));
        }
        return 1.0 / p;
    };
    return quadrature::adaptive_simpson(integrand, 1.0, u, kLogQuadrature);
}

double escort_log(const Escort& phi, double u) {
    require_scalar(phi, "escort logarithm");
    if (std::isnan(u)) {
        throw DomainError("escort logarithm argument is NaN");
    }
    auto positive = [&phi](double v) {
        if (!(v > 0.0)) {
            throw DomainError("escort logarithm of " + phi.describe() + " needs u > 0, got " + format_double(v));
        }
    };
    return std::visit(overloaded{
                          [&](const family::Identity&) {
                              positive(u);
                              return std::log(u);
                          },
                          [&](const family::Scaled& s) {
                              positive(u);
                              return std::log(u) / s.beta;
                          },
                          [&](const family::Power& p) {
                              if (unit_power(p.q)) {
                                  positive(u);
                                  return std::log(u);
                              }
                              // For q < 1 the integral converges at 0.
                              if (p.q < 1.0 ? u < 0.0 : u <= 0.0) {
                                  positive(u);
                              }
                              return (std::pow(u, 1.0 - p.q) - 1.0) / (1.0 - p.q);
                          },
                          [&](const family::Constant& c) { return (u - 1.0) / c.c; },
                          [&](const family::Exponential&) { return std::exp(-1.0) - std::exp(-u); },
                          [&](const family::Custom&) { return escort_log_quadrature(phi, u); },
                          [](const family::VectorValued&) -> double { return 0.0; },
                      },
                      phi.family());
}

double escort_exp_numeric(const Escort& phi, double w) {
    require_scalar(phi, "escort exponential");
    if (!std::isfinite(w)) {
        throw RangeError("escort exponential argument is not finite");
    }
    if (w == 0.0) {
        return 1.0;
    }
    auto out_of_range = [&]() {
        return RangeError("escort exponential of " + phi.describe() + ": " + format_double(w) +
                          " is outside the range of the escort logarithm");
    };

    // log_phi(b) from a known value log_phi(a). Custom escorts integrate only
    // the increment so that wide brackets stay cheap and accurate.
    const bool custom = std::holds_alternative<family::Custom>(phi.family());
    auto log_from = [&](double a, double log_a, double b) {
        if (!custom) {
            return escort_log(phi, b);
        }
        return log_a + quadrature::adaptive_simpson(
                           [&phi](double v) {
                               const double p = phi(v);
                               if (!(p > 0.0)) {
                                   throw DomainError("escort is not positive");
                               }
                               return 1.0 / p;
                           },
                           a, b, kLogQuadrature);
    };

    // Bracket by doubling (or halving) away from u = 1.
    double lo = 1.0;
    double hi = 1.0;
    double log_lo = 0.0;
    double log_hi = 0.0;
    try {
        if (w > 0.0) {
            while (log_hi < w) {
                lo = hi;
                log_lo = log_hi;
                hi = 2.0 * lo;
                if (hi > 1e300) {
                    throw out_of_range();
                }
                log_hi = log_from(lo, log_lo, hi);
            }
        } else {
            while (log_lo > w) {
                hi = lo;
                log_hi = log_lo;
                lo = 0.5 * hi;
                if (lo < 1e-300) {
                    throw out_of_range();
                }
                log_lo = log_from(hi, log_hi, lo);
            }
        }
    } catch (const DomainError&) {
        throw out_of_range();
    } catch (const QuadratureError&) {
        throw out_of_range();
    }

    // Safeguarded Newton anchored at the lower bracket; d/du log_phi(u) = 1/phi(u).
    const double anchor = lo;
    const double log_anchor = log_lo;
    double u = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double gu = log_from(anchor, log_anchor, u) - w;
        if (gu == 0.0) {
            return u;
        }
        if (gu < 0.0) {
            lo = u;
        } else {
            hi = u;
        }
        double next = u - gu * phi(u);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * u ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            return next;
        }
        u = next;
    }
    throw ConvergenceError("escort exponential of " + phi.describe() + " did not converge at " + format_double(w));
}

double escort_exp(const Escort& phi, double w) {
    require_scalar(phi, "escort exponential");
    if (std::isnan(w)) {
        throw RangeError("escort exponential argument is NaN");
    }
    auto out_of_range = [&]() {
        return RangeError("escort exponential of " + phi.describe() + ": " + format_double(w) +
                          " is outside the range of the escort logarithm");
    };
    auto checked = [&](double u) {
        if (!(u > 0.0) || !std::isfinite(u)) {
            throw out_of_range();
        }
        return u;
    };
    return std::visit(overloaded{
                          [&](const family::Identity&) { return checked(std::exp(w)); },
                          [&](const family::Scaled& s) { return checked(std::exp(s.beta * w)); },
                          [&](const family::Power& p) {
                              if (unit_power(p.q)) {
                                  return checked(std::exp(w));
                              }
                              const double base = 1.0 + (1.0 - p.q) * w;
                              if (!(base > 0.0)) {
                                  throw out_of_range();
                              }
                              return checked(std::pow(base, 1.0 / (1.0 - p.q)));
                          },
                          [&](const family::Constant& c) { return checked(1.0 + c.c * w); },
                          [&](const family::Exponential&) {
                              const double arg = std::exp(-1.0) - w;
                              if (!(arg > 0.0)) {
                                  throw out_of_range();
                              }
                              return checked(-std::log(arg));
                          },
                          [&](const family::Custom&) { return escort_exp_numeric(phi, w); },
                          [](const family::VectorValued&) -> double { return 0.0; },
                      },
                      phi.family());
}

}  // namespace escortdyn
