#include "relaxopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace relaxopt {

const char* to_string(BaselineMethod m) {
    switch (m) {
    case BaselineMethod::nelder_mead: return "nelder_mead";
    case BaselineMethod::random_search: return "random_search";
    case BaselineMethod::differential_evolution: return "differential_evolution";
    case BaselineMethod::simulated_annealing: return "simulated_annealing";
    }
    return "?";
}

BaselineMethod baseline_from_name(const std::string& name) {
    if (name == "nelder_mead") return BaselineMethod::nelder_mead;
    if (name == "random_search") return BaselineMethod::random_search;
    if (name == "differential_evolution") return BaselineMethod::differential_evolution;
    if (name == "simulated_annealing") return BaselineMethod::simulated_annealing;
    throw config_error("unknown baseline: " + name);
}

void BaselineConfig::validate() const {
    if (max_evals <= 0) throw config_error("baseline max_evals must be positive");
    if (!(tolerance > 0)) throw config_error("baseline tolerance must be positive");
    if (de_population < 4) throw config_error("differential evolution needs population >= 4");
}

BaselineConfig default_baseline_config(BaselineMethod m) {
    BaselineConfig cfg;
    cfg.method = m;
    switch (m) {
    case BaselineMethod::nelder_mead: cfg.max_evals = 1600; break;
    case BaselineMethod::random_search: cfg.max_evals = 3900; break;
    case BaselineMethod::differential_evolution: cfg.max_evals = 3700; break;
    case BaselineMethod::simulated_annealing: cfg.max_evals = 2100; break;
    }
    return cfg;
}

namespace {

// Shared evaluation guard: every baseline respects the budget exactly, so
// evaluation happens only through this helper.
struct Budget {
    ExtendedObjective& obj;
    long start;
    long limit;
    BestPoint best;

    Budget(ExtendedObjective& o, long max_evals) : obj(o), start(o.eval_count()), limit(max_evals) {}

    long used() const { return obj.eval_count() - start; }
    bool exhausted() const { return used() >= limit; }

    std::optional<double> eval(double x) {
        if (exhausted()) return std::nullopt;
        double f = obj.evaluate(x);
        best.update(x, f, 0.0);
        return f;
    }
};

RunResult finish(Budget& budget, int iters, bool converged) {
    RunResult r;
    r.x_out = budget.best.x;
    r.f_out = budget.best.f;
    r.n_evals = budget.used();
    r.n_iters = iters;
    r.stop_reason = converged ? StopReason::converged_interior : StopReason::max_evals;
    return r;
}

RunResult nelder_mead(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng) {
    const Domain& dom = obj.domain();
    double range = dom.length();
    Budget budget(obj, cfg.max_evals);

    double x0 = rng.uniform(dom.x_min, dom.x_max);
    double x1 = dom.clamp(x0 + cfg.nm_init_step * range);
    if (x1 == x0) x1 = dom.clamp(x0 - cfg.nm_init_step * range);
    auto f0 = budget.eval(x0);
    auto f1 = budget.eval(x1);
    if (!f0 || !f1) return finish(budget, 0, false);

    double xtol = cfg.tolerance * range;
    int iters = 0;
    while (!budget.exhausted()) {
        ++iters;
        if (*f1 < *f0) {
            std::swap(x0, x1);
            std::swap(*f0, *f1);
        }
        if (std::abs(x1 - x0) <= xtol) return finish(budget, iters, true);

        double xr = dom.clamp(x0 + cfg.nm_reflection * (x0 - x1));
        auto fr = budget.eval(xr);
        if (!fr) break;
        if (*fr < *f0) {
            double xe = dom.clamp(x0 + cfg.nm_expansion * (x0 - x1));
            auto fe = (xe == xr) ? fr : budget.eval(xe);
            if (!fe) break;
            if (*fe < *fr) {
                x1 = xe;
                *f1 = *fe;
            } else {
                x1 = xr;
                *f1 = *fr;
            }
        } else if (*fr < *f1) {
            x1 = xr;
            *f1 = *fr;
        } else {
            double xc = x0 + cfg.nm_contraction * (x1 - x0);
            auto fc = budget.eval(xc);
            if (!fc) break;
            if (*fc < *f1) {
                x1 = xc;
                *f1 = *fc;
            } else {
                x1 = x0 + cfg.nm_shrink * (x1 - x0);
                auto fs = budget.eval(x1);
                if (!fs) break;
                *f1 = *fs;
            }
        }
    }
    return finish(budget, iters, false);
}

RunResult random_search(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng) {
    const Domain& dom = obj.domain();
    double range = dom.length();
    Budget budget(obj, cfg.max_evals);

    double x = rng.uniform(dom.x_min, dom.x_max);
    auto fx = budget.eval(x);
    if (!fx) return finish(budget, 0, false);
    double radius = range;
    double xtol = cfg.tolerance * range;
    int iters = 0;
    while (!budget.exhausted()) {
        ++iters;
        if (radius <= xtol) return finish(budget, iters, true);
        double y = dom.clamp(x + rng.uniform(-radius, radius));
        auto fy = budget.eval(y);
        if (!fy) break;
        if (*fy < *fx) {
            x = y;
            *fx = *fy;
        } else {
            radius *= cfg.rs_shrink;
        }
    }
    return finish(budget, iters, false);
}

RunResult differential_evolution(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng) {
    const Domain& dom = obj.domain();
    double range = dom.length();
    Budget budget(obj, cfg.max_evals);

    int np = cfg.de_population;
    std::vector<double> xs(np), fs(np);
    for (int i = 0; i < np; ++i) {
        xs[i] = rng.uniform(dom.x_min, dom.x_max);
        auto f = budget.eval(xs[i]);
        if (!f) return finish(budget, 0, false);
        fs[i] = *f;
    }

    double xtol = cfg.tolerance * range;
    int iters = 0;
    while (!budget.exhausted()) {
        ++iters;
        auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        if (*hi - *lo <= xtol) return finish(budget, iters, true);
        for (int i = 0; i < np; ++i) {
            int a = static_cast<int>(rng.below(np));
            while (a == i) a = static_cast<int>(rng.below(np));
            int b = static_cast<int>(rng.below(np));
            while (b == i || b == a) b = static_cast<int>(rng.below(np));
            int c = static_cast<int>(rng.below(np));
            while (c == i || c == a || c == b) c = static_cast<int>(rng.below(np));
            double trial = dom.clamp(xs[a] + cfg.de_weight * (xs[b] - xs[c]));
            auto ft = budget.eval(trial);
            if (!ft) return finish(budget, iters, false);
            if (*ft <= fs[i]) {
                xs[i] = trial;
                fs[i] = *ft;
            }
        }
    }
    return finish(budget, iters, false);
}

RunResult simulated_annealing(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng) {
    const Domain& dom = obj.domain();
    double range = dom.length();
    Budget budget(obj, cfg.max_evals);

    double x = rng.uniform(dom.x_min, dom.x_max);
    auto fx = budget.eval(x);
    if (!fx) return finish(budget, 0, false);
    double temp = cfg.sa_temp0;
    int iters = 0;
    while (!budget.exhausted()) {
        ++iters;
        double step = range * std::max(cfg.sa_step_fraction * temp / cfg.sa_temp0, cfg.sa_step_floor);
        double y = dom.clamp(x + step * rng.normal());
        auto fy = budget.eval(y);
        if (!fy) break;
        double delta = *fy - *fx;
        if (delta <= 0.0 || rng.uniform01() < std::exp(-delta / temp)) {
            x = y;
            *fx = *fy;
        }
        temp *= cfg.sa_cooling;
    }
    return finish(budget, iters, false);
}

} // namespace

RunResult run_baseline(ExtendedObjective& obj, const BaselineConfig& cfg, Rng& rng) {
    cfg.validate();
    switch (cfg.method) {
    case BaselineMethod::nelder_mead: return nelder_mead(obj, cfg, rng);
    case BaselineMethod::random_search: return random_search(obj, cfg, rng);
    case BaselineMethod::differential_evolution: return differential_evolution(obj, cfg, rng);
    case BaselineMethod::simulated_annealing: return simulated_annealing(obj, cfg, rng);
    }
    throw config_error("unknown baseline method");
}

} // namespace relaxopt
