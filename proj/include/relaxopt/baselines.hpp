#ifndef RELAXOPT_BASELINES_HPP
#define RELAXOPT_BASELINES_HPP

#include <string>

#include "relaxopt/objective.hpp"
#include "relaxopt/optimizer.hpp"
#include "relaxopt/rng.hpp"

namespace relaxopt {

// Canonical textbook versions of the comparison optimizers, instrumented
// through the same ExtendedObjective. Budgets default to roughly the
// evaluation counts the reference methods use on this corpus.
enum class BaselineMethod {
    nelder_mead,
    random_search,
    differential_evolution,
    simulated_annealing,
};

const char* to_string(BaselineMethod m);
BaselineMethod baseline_from_name(const std::string& name);

struct BaselineConfig {
    BaselineMethod method = BaselineMethod::nelder_mead;
    long max_evals = 2000;
    double tolerance = 1e-9; // x-tolerance as a fraction of the domain length

    // Nelder-Mead (two-vertex simplex in 1-D)
    double nm_reflection = 1.0;
    double nm_expansion = 2.0;
    double nm_contraction = 0.5;
    double nm_shrink = 0.5;
    double nm_init_step = 0.1; // second vertex offset, fraction of range

    // Random search (shrinking-neighborhood accept-if-better)
    double rs_shrink = 0.99; // radius decay per rejected move

    // Differential evolution (rand/1/bin; in 1-D the forced mutation index
    // makes the trial always take the donor value)
    int de_population = 15;
    double de_weight = 0.7;
    double de_crossover = 0.9;

    // Simulated annealing (Gaussian proposals, geometric cooling; proposal
    // scale tied to the temperature)
    double sa_temp0 = 1.0;
    double sa_cooling = 0.997; // per evaluation
    double sa_step_fraction = 0.5;
    double sa_step_floor = 1e-4;

    void validate() const;
};

// Budgets tuned once to match the evaluation counts typical of each method
// on this benchmark; comparisons stay structurally similar.
BaselineConfig default_baseline_config(BaselineMethod m);

RunResult run_baseline(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng);

} // namespace relaxopt

#endif
