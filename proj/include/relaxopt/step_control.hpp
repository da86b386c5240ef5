#ifndef RELAXOPT_STEP_CONTROL_HPP
#define RELAXOPT_STEP_CONTROL_HPP

#include <span>

#include "relaxopt/domain.hpp"
#include "relaxopt/sampling.hpp"

namespace relaxopt {

// Tolerances for the per-iteration error control. gamma_i bound the drift
// between the true and surrogate flows, upsilon_i bound the surrogate flow's
// own movement (Taylor validity); both are fractions of the current sigma.
// m scales the confidence interval of the beta estimator.
struct StepParams {
    double gamma1 = 0.2;
    double gamma2 = 0.2;
    double upsilon1 = 0.2;
    double upsilon2 = 0.2;
    double m = 1.0;

    // Validity of the Taylor bounds needs 1 + gamma2 + upsilon2 <= sqrt(2).
    bool valid() const {
        return gamma1 > 0 && gamma2 > 0 && upsilon1 > 0 && upsilon2 > 0 && m >= 0 &&
               1.0 + gamma2 + upsilon2 <= 1.4142135623730951;
    }
};

// Monte Carlo estimators feeding the time-step bounds:
//   r_hat       importance-sampling residual norm  [sum e^2 l / sum l]^(1/2)
//   q_hat_i     Taylor bound sqrt(2 g1^2 + 6 g2^2)/sigma, sqrt(6 g1^2 + 26 g2^2)/sigma
//   beta_bar_i  |mean_l e B_i| + m sigma_hat / sqrt(n)
//   eps_hat_i   r_hat q_hat_i + beta_bar_i
struct ErrorEstimates {
    double r_hat = 0.0;
    double q_hat_1 = 0.0;
    double q_hat_2 = 0.0;
    double beta_bar_1 = 0.0;
    double beta_bar_2 = 0.0;
    double eps_hat_1 = 0.0;
    double eps_hat_2 = 0.0;
    // (sum of likelihood multipliers)/n; the importance-sampling estimators
    // rest on this being ~1, so a collapse means the sample no longer covers
    // the current state
    double overlap = 1.0;
    int variance_clamps = 0; // sigma_hat^2 forced to 0 by cancellation
};

ErrorEstimates estimate_errors(std::span<const SamplePoint> points, const QuadModel& q,
                               const GaussianState& fit_state, const GaussianState& current_state,
                               const StepParams& params);

struct StepParts {
    double t_mu;
    double t_sigma;
    double t_eps1;
    double t_eps2;
};

struct StepChoice {
    double t; // min of the parts, may be +inf (caller clamps at h_max)
    StepParts parts;
};

// T_j = min(T_mu, T_sigma, T_eps1, T_eps2). Each part is +inf when its
// defining equality has no positive solution. gamma_i in params may be the
// remaining budget (sparse iterations) rather than the full tolerance.
StepChoice time_step(const QuadModel& q, const GaussianState& s, const ErrorEstimates& est,
                     const StepParams& params);

} // namespace relaxopt

#endif
