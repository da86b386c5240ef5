#include "relaxopt/gaussian_flow.hpp"

#include <cmath>
#include <stdexcept>

namespace relaxopt {

GradF grad_F_quadratic(const QuadModel& q, const GaussianState& s) {
    return {q.b + 2.0 * q.c * s.mu, 2.0 * q.c * s.sigma};
}

GaussianState flow_step(const QuadModel& q, const GaussianState& s, double t) {
    if (curvature_is_zero(q.b, q.c)) {
        return {s.mu - q.b * t, s.sigma};
    }
    double ex = -2.0 * q.c * t;
    if (ex > 700.0) throw std::overflow_error("flow_step: e^{-2ct} overflows, clamp t");
    double decay = std::exp(ex);
    double mu = q.b * std::expm1(ex) / (2.0 * q.c) + s.mu * decay;
    return {mu, s.sigma * decay};
}

GaussianState flow_step_clamped(const QuadModel& q, const GaussianState& s, double T,
                                double h_max, double vartheta) {
    if (!(T > h_max)) return flow_step(q, s, T);
    if (q.c < 0.0 && !curvature_is_zero(q.b, q.c)) return flow_step(q, s, h_max);
    if (curvature_is_zero(q.b, q.c)) {
        // linear flow for h_max, then the extra contraction on sigma only
        return {s.mu - q.b * h_max, vartheta * s.sigma};
    }
    double decay = vartheta * std::exp(-2.0 * q.c * h_max);
    double mu = q.b * (decay - 1.0) / (2.0 * q.c) + s.mu * decay;
    return {mu, s.sigma * decay};
}

namespace {

// E[x^n] for N(mu, sigma^2): M_0 = 1, M_1 = mu, M_n = mu M_{n-1} + (n-1) sigma^2 M_{n-2}
void gaussian_moments(const GaussianState& s, double* m, int up_to) {
    m[0] = 1.0;
    if (up_to >= 1) m[1] = s.mu;
    for (int n = 2; n <= up_to; ++n)
        m[n] = s.mu * m[n - 1] + (n - 1) * s.sigma * s.sigma * m[n - 2];
}

} // namespace

double relaxed_F_polynomial(std::span<const double> coeffs, const GaussianState& s) {
    if (coeffs.size() > 9) throw std::invalid_argument("polynomial degree must be <= 8");
    double m[9];
    gaussian_moments(s, m, static_cast<int>(coeffs.size()) - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) sum += coeffs[k] * m[k];
    return sum;
}

GradF grad_F_polynomial(std::span<const double> coeffs, const GaussianState& s) {
    if (coeffs.size() > 9) throw std::invalid_argument("polynomial degree must be <= 8");
    double m[11];
    gaussian_moments(s, m, static_cast<int>(coeffs.size()) + 1);
    // F_mu = E[(X-mu) f] / sigma^2, F_sigma = E[((X-mu)^2 - sigma^2) f] / sigma^3
    double e1 = 0.0, e2 = 0.0, e0 = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        e0 += coeffs[k] * m[k];
        e1 += coeffs[k] * (m[k + 1] - s.mu * m[k]);
        e2 += coeffs[k] * (m[k + 2] - 2.0 * s.mu * m[k + 1] + s.mu * s.mu * m[k]);
    }
    double s2 = s.sigma * s.sigma;
    return {e1 / s2, (e2 - s2 * e0) / (s2 * s.sigma)};
}

} // namespace relaxopt
