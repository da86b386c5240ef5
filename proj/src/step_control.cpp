#include "relaxopt/step_control.hpp"

#include <cmath>
#include <limits>
#include <vector>
#include <stdexcept>

#include "relaxopt/gaussian_flow.hpp"

namespace relaxopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ErrorEstimates estimate_errors(std::span<const SamplePoint> points, const QuadModel& q,
                               const GaussianState& fit_state, const GaussianState& current_state,
                               const StepParams& params) {
    if (points.size() < 2) throw std::invalid_argument("estimate_errors needs >= 2 points");
    double mu = current_state.mu;
    double sigma = current_state.sigma;

    // Self-normalized weights computed via log-sum-exp: the raw likelihood
    // multipliers underflow once sigma has contracted a few orders below the
    // fit scale, while the normalized estimators stay well defined.
    std::size_t n = points.size();
    std::vector<double> logw(n);
    double max_logw = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        logw[k] = log_gaussian_pdf(points[k].x, current_state) -
                  log_gaussian_pdf(points[k].x, fit_state);
        max_logw = std::max(max_logw, logw[k]);
    }

    double sum_l = 0.0;
    double sum_e2 = 0.0;
    double sum_eb1 = 0.0, sum_eb2 = 0.0;
    double sum_e2b1 = 0.0, sum_e2b2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& pt = points[k];
        double l = std::exp(logw[k] - max_logw);
        double e = pt.fx - q(pt.x);
        double u = pt.x - mu;
        double b1 = u / (sigma * sigma);
        double b2 = (u - sigma) * (u + sigma) / (sigma * sigma * sigma);
        sum_l += l;
        sum_e2 += e * e * l;
        sum_eb1 += e * b1 * l;
        sum_eb2 += e * b2 * l;
        sum_e2b1 += e * e * b1 * b1 * l;
        sum_e2b2 += e * e * b2 * b2 * l;
    }

    ErrorEstimates est;
    double n_bar = static_cast<double>(n);
    est.overlap = std::exp(max_logw) * sum_l / n_bar; // 0 on underflow: diagnostic only
    est.r_hat = std::sqrt(sum_e2 / sum_l);
    est.q_hat_1 =
        std::sqrt(2.0 * params.gamma1 * params.gamma1 + 6.0 * params.gamma2 * params.gamma2) /
        sigma;
    est.q_hat_2 =
        std::sqrt(6.0 * params.gamma1 * params.gamma1 + 26.0 * params.gamma2 * params.gamma2) /
        sigma;

    double beta_hat_1 = std::abs(sum_eb1 / sum_l);
    double beta_hat_2 = std::abs(sum_eb2 / sum_l);
    double var_1 = sum_e2b1 / sum_l - beta_hat_1 * beta_hat_1;
    double var_2 = sum_e2b2 / sum_l - beta_hat_2 * beta_hat_2;
    if (var_1 < 0.0) {
        var_1 = 0.0;
        ++est.variance_clamps;
    }
    if (var_2 < 0.0) {
        var_2 = 0.0;
        ++est.variance_clamps;
    }
    est.beta_bar_1 = beta_hat_1 + params.m * std::sqrt(var_1 / n_bar);
    est.beta_bar_2 = beta_hat_2 + params.m * std::sqrt(var_2 / n_bar);
    est.eps_hat_1 = est.r_hat * est.q_hat_1 + est.beta_bar_1;
    est.eps_hat_2 = est.r_hat * est.q_hat_2 + est.beta_bar_2;
    return est;
}

namespace {

// The two root branches of |mu^q(t) - mu_j| = upsilon1 sigma_j for c != 0;
// a branch that is undefined or nonpositive does not constrain the step.
double t_mu_bound(const QuadModel& q, const GaussianState& s, double upsilon1) {
    if (curvature_is_zero(q.b, q.c)) {
        if (q.b == 0.0) return kInf;
        return upsilon1 * s.sigma / std::abs(q.b);
    }
    double g = q.b + 2.0 * q.c * s.mu; // gradient of F in mu
    if (g == 0.0) return kInf;
    double best = kInf;
    for (double sign : {1.0, -1.0}) {
        double denom = g + sign * 2.0 * q.c * s.sigma * upsilon1;
        if (denom == 0.0) continue;
        double ratio = g / denom;
        if (ratio <= 0.0) continue;
        double t = std::log(ratio) / (2.0 * q.c);
        if (t > 0.0) best = std::min(best, t);
    }
    return best;
}

double t_sigma_bound(const QuadModel& q, double upsilon2) {
    if (curvature_is_zero(q.b, q.c)) return kInf; // sgn(0) = 0: no constraint
    double sgn = (q.c > 0.0) ? 1.0 : -1.0;
    double arg = 1.0 - upsilon2 * sgn;
    if (arg <= 0.0) return kInf;
    return -std::log(arg) / (2.0 * q.c);
}

double t_eps_bound(const QuadModel& q, const GaussianState& s, double gamma, double eps) {
    if (eps <= 0.0) return kInf;
    if (curvature_is_zero(q.b, q.c)) return gamma * s.sigma / eps;
    double arg = 1.0 - 2.0 * q.c * gamma * s.sigma / eps;
    if (arg <= 0.0) return kInf;
    double t = -std::log(arg) / (2.0 * q.c);
    return t > 0.0 ? t : kInf;
}

} // namespace

StepChoice time_step(const QuadModel& q, const GaussianState& s, const ErrorEstimates& est,
                     const StepParams& params) {
    StepParts parts;
    parts.t_mu = t_mu_bound(q, s, params.upsilon1);
    parts.t_sigma = t_sigma_bound(q, params.upsilon2);
    parts.t_eps1 = t_eps_bound(q, s, params.gamma1, est.eps_hat_1);
    parts.t_eps2 = t_eps_bound(q, s, params.gamma2, est.eps_hat_2);
    double t = std::min(std::min(parts.t_mu, parts.t_sigma), std::min(parts.t_eps1, parts.t_eps2));
    return {t, parts};
}

} // namespace relaxopt
