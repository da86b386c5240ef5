#ifndef RELAXOPT_DOMAIN_HPP
#define RELAXOPT_DOMAIN_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaxopt {

struct Domain {
    double x_min;
    double x_max;

    double length() const { return x_max - x_min; }
    bool contains(double x) const { return x >= x_min && x <= x_max; }
    double clamp(double x) const { return std::min(std::max(x, x_min), x_max); }
    double nearest_boundary(double x) const {
        return (x - x_min < x_max - x) ? x_min : x_max;
    }
    double boundary_distance(double x) const {
        return std::min(x - x_min, x_max - x);
    }

    void validate() const {
        if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_min < x_max))
            throw std::invalid_argument("domain requires finite x_min < x_max");
    }
};

// Parameters (mu, sigma) of the sampling Gaussian.
struct GaussianState {
    double mu;
    double sigma;

    bool valid() const { return std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0; }
};

// Quadratic surrogate q(x) = a + b x + c x^2.
struct QuadModel {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double operator()(double x) const { return a + x * (b + x * c); }
};

inline double log_gaussian_pdf(double x, const GaussianState& s) {
    double z = (x - s.mu) / s.sigma;
    return -0.5 * z * z - std::log(s.sigma) - 0.9189385332046727417803297; // log sqrt(2 pi)
}

} // namespace relaxopt

#endif
