#ifndef RELAXOPT_OPTIMIZER_HPP
#define RELAXOPT_OPTIMIZER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaxopt/domain.hpp"
#include "relaxopt/objective.hpp"
#include "relaxopt/sampling.hpp"
#include "relaxopt/step_control.hpp"

namespace relaxopt {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    int n0 = 10;
    int n_min = 6;
    int n_max = 10;
    double h_max = 1000.0;
    long max_evals = 1000;  // N*_f
    int max_iters = 1000;   // N*_i
    double sigma_target_hat = 5e-5;
    double sigma_min_hat = 1e-8;
    double delta_f = 1.25e-6;
    double kappa = 1.0;
    double reuse_prob = 0.75; // p
    double gamma1 = 0.2, gamma2 = 0.2;
    double upsilon1 = 0.2, upsilon2 = 0.2;
    double confidence_mult = 1.0; // m
    double vartheta = 0.95;
    double varpi = 10.0; // consumed by whoever builds the objective
    int boosting_cycles = 0;

    bool rejection_sampling = true;
    bool adaptivity = true;
    bool sparse_sampling = true;
    bool restart = true;
    bool postprocess = true;
    bool boost_random_restart = true;
    bool stop_sigma_only = false; // noisy protocol: sigma <= sigma_target is the sole criterion
    bool collect_trace = false;

    int max_restarts = 10;
    // Refit once the remaining error budget drops below this fraction of
    // gamma_i; an exactly-zero budget would force T -> 0.
    double budget_refit_fraction = 0.25;
    // Refit once the mean has drifted this many fit-time sigmas from where
    // the sample was drawn: past that the surrogate extrapolates and the
    // reweighted estimators no longer see the region the flow is entering.
    double drift_refit_sigmas = 2.0;

    StepParams step_params() const {
        return {gamma1, gamma2, upsilon1, upsilon2, confidence_mult};
    }
    void validate() const;
};

enum class StopReason {
    converged_interior,
    converged_boundary,
    sigma_floor,
    max_iters,
    max_evals,
};

const char* to_string(StopReason r);

struct TraceRow {
    int iter;       // 0-based iteration index
    double mu;      // state at the start of the iteration
    double sigma;
    double t_step;  // chosen T_j (+inf possible)
    int n;          // sample size in use
    long evals;     // cumulative evaluations after the iteration
    bool resampled; // whether this iteration drew a sample / refit
};

struct RunResult {
    double x_out = 0.0;
    double f_out = 0.0;
    long n_evals = 0;
    int n_iters = 0;
    int n_restarts = 0;
    StopReason stop_reason = StopReason::max_iters;
    std::vector<TraceRow> trace;
};

// Best evaluated point so far with the sigma of the Gaussian it was drawn
// from (the restart rule reuses that scale). Ties keep the earliest point.
struct BestPoint {
    bool has = false;
    double x = 0.0;
    double f = 0.0;
    double sigma_src = 0.0;

    void update(double x_, double f_, double sigma_src_) {
        if (!has || f_ < f) {
            has = true;
            x = x_;
            f = f_;
            sigma_src = sigma_src_;
        }
    }
};

// sigma-based stopping test on the current sample; fail-safe criteria
// (sigma_min, budget limits) live in the run loop.
std::optional<StopReason> stop_check(const GaussianState& s, std::span<const SamplePoint> sample,
                                     const Domain& dom, double sigma_target, double delta_f,
                                     double kappa, bool sigma_only);

// Restart rule: when the best evaluated point sits further than sigma from
// the terminal mean, resume from it at half its source scale.
std::optional<GaussianState> restart_target(const BestPoint& best, const GaussianState& final_state);

// Candidate sweep after termination: x_best, the terminal mean, and either
// the surrogate vertex (interior, c > 0) or the nearest boundary point.
// Returns the argmin; evaluates only candidates whose value is unknown.
std::pair<double, double> postprocess(ExtendedObjective& obj, const Domain& dom,
                                      const GaussianState& s, const QuadModel& q, bool have_q,
                                      const BestPoint& best, double kappa);

RunResult run(ExtendedObjective& obj, const RunConfig& cfg, SampleStore& store, Rng& rng,
              std::optional<GaussianState> init = {});

// Repeats run() `cycles` extra times, keeping the accumulated sample store;
// each extra cycle restarts from a fresh random mean at full sigma. Returns
// the best outcome; evaluation and iteration counts are totals.
RunResult run_boosted(ExtendedObjective& obj, const RunConfig& cfg, int cycles, SampleStore& store,
                      Rng& rng, std::optional<GaussianState> init = {});

} // namespace relaxopt

#endif
