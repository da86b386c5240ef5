#ifndef RELAXOPT_GAUSSIAN_FLOW_HPP
#define RELAXOPT_GAUSSIAN_FLOW_HPP

#include <span>
#include <utility>

#include "relaxopt/domain.hpp"

namespace relaxopt {

// The relaxed functional F(mu, sigma) = E[f(X)], X ~ N(mu, sigma^2), has an
// exact gradient when f is the quadratic q: grad F = (b + 2 c mu, 2 c sigma).
// Its gradient flow is linear and solvable in closed form, which is what the
// optimizer integrates each iteration.

struct GradF {
    double d_mu;
    double d_sigma;
};

GradF grad_F_quadratic(const QuadModel& q, const GaussianState& s);

// Treat c as zero below this relative threshold: the (e^{-2ct}-1)/(2c)
// factor cancels catastrophically there and the linear-flow formula is exact
// in the limit.
inline bool curvature_is_zero(double b, double c) {
    return std::abs(c) < 1e-12 * std::max(1.0, std::abs(b));
}

// Exact solution of the quadratic gradient flow after time t:
//   mu(t) = b (e^{-2ct} - 1) / (2c) + mu0 e^{-2ct},  sigma(t) = e^{-2ct} sigma0,
// with the c -> 0 limit mu(t) = mu0 - b t, sigma(t) = sigma0.
// Throws std::overflow_error if e^{-2ct} overflows; callers clamp t first.
GaussianState flow_step(const QuadModel& q, const GaussianState& s, double t);

// Flow with the maximum-step clamp: when T > h_max and c >= 0, the factor
// e^{-2c(T-h_max)} is replaced by vartheta < 1, contracting sigma even for
// flat surrogates. For c < 0 the clamp is not taken and the flow runs for
// h_max.
GaussianState flow_step_clamped(const QuadModel& q, const GaussianState& s, double T,
                                double h_max, double vartheta);

// Closed-form F for a polynomial objective (coeffs[k] multiplies x^k,
// degree <= 8) via the Gaussian moment recurrence. Test oracle.
double relaxed_F_polynomial(std::span<const double> coeffs, const GaussianState& s);

// Exact gradient of F for a polynomial objective; used by flow oracles.
GradF grad_F_polynomial(std::span<const double> coeffs, const GaussianState& s);

} // namespace relaxopt

#endif
