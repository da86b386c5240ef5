#include "relaxopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relaxopt/gaussian_flow.hpp"
#include "relaxopt/quadratic_fit.hpp"

namespace relaxopt {

void RunConfig::validate() const {
    if (n_min < 3 || n_max < n_min || n0 < 3) throw config_error("sample sizes: need n0,nmin >= 3 and nmax >= nmin");
    if (!(h_max > 0)) throw config_error("hmax must be positive");
    if (max_evals <= 0 || max_iters <= 0) throw config_error("budgets must be positive");
    if (!(sigma_target_hat > 0) || !(sigma_min_hat > 0)) throw config_error("sigma targets must be positive");
    if (!(delta_f >= 0) || !(kappa > 0)) throw config_error("tolf/kappa must be positive");
    if (!(reuse_prob > 0) || !(reuse_prob < 1)) throw config_error("prob must lie in (0,1)");
    if (!(vartheta > 0) || !(vartheta < 1)) throw config_error("aggregation must lie in (0,1)");
    if (!(varpi > 0)) throw config_error("penalty must be positive");
    if (boosting_cycles < 0 || max_restarts < 0) throw config_error("cycle counts must be nonnegative");
    if (!step_params().valid())
        throw config_error("step parameters: need positive gamma/upsilon with 1+gamma2+upsilon2 <= sqrt(2)");
}

const char* to_string(StopReason r) {
    switch (r) {
    case StopReason::converged_interior: return "converged_interior";
    case StopReason::converged_boundary: return "converged_boundary";
    case StopReason::sigma_floor: return "sigma_floor";
    case StopReason::max_iters: return "max_iters";
    case StopReason::max_evals: return "max_evals";
    }
    return "?";
}

namespace {

double population_std(std::span<const SamplePoint> sample) {
    double mean = 0.0;
    for (const auto& p : sample) mean += p.fx;
    mean /= static_cast<double>(sample.size());
    double var = 0.0;
    for (const auto& p : sample) var += (p.fx - mean) * (p.fx - mean);
    var /= static_cast<double>(sample.size());
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

} // namespace

std::optional<StopReason> stop_check(const GaussianState& s, std::span<const SamplePoint> sample,
                                     const Domain& dom, double sigma_target, double delta_f,
                                     double kappa, bool sigma_only) {
    if (s.sigma > sigma_target) return std::nullopt;
    if (sigma_only) return StopReason::converged_interior;
    if (sample.empty()) return std::nullopt;

    bool interior = dom.boundary_distance(s.mu) > kappa * s.sigma;
    if (interior) {
        // sigma_f over in-domain points only: values recorded outside the
        // domain are extension penalties, not samples of f
        std::vector<SamplePoint> inside;
        for (const auto& p : sample)
            if (dom.contains(p.x)) inside.push_back(p);
        if (inside.size() >= 2 && population_std(inside) <= delta_f)
            return StopReason::converged_interior;
        return std::nullopt;
    }

    // Near the boundary f' need not vanish; check instead that the in-domain
    // sample point nearest the boundary is the sample minimum.
    double x_b = dom.nearest_boundary(s.mu);
    const SamplePoint* nearest = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    double min_f = std::numeric_limits<double>::infinity();
    for (const auto& p : sample) {
        if (!dom.contains(p.x)) continue;
        min_f = std::min(min_f, p.fx);
        double d = std::abs(p.x - x_b);
        if (d < best_dist) {
            best_dist = d;
            nearest = &p;
        }
    }
    if (nearest && nearest->fx <= min_f) return StopReason::converged_boundary;
    return std::nullopt;
}

std::optional<GaussianState> restart_target(const BestPoint& best, const GaussianState& final_state) {
    if (!best.has) return std::nullopt;
    if (std::abs(best.x - final_state.mu) < final_state.sigma) return std::nullopt;
    return GaussianState{best.x, best.sigma_src / 2.0};
}

std::pair<double, double> postprocess(ExtendedObjective& obj, const Domain& dom,
                                      const GaussianState& s, const QuadModel& q, bool have_q,
                                      const BestPoint& best, double kappa) {
    double out_x = dom.clamp(s.mu);
    double out_f = std::numeric_limits<double>::infinity();
    bool have_out = false;
    if (best.has && dom.contains(best.x)) {
        out_x = best.x;
        out_f = best.f;
        have_out = true;
    }

    std::vector<double> candidates;
    auto add = [&](double x) {
        x = dom.clamp(x);
        if (have_out && x == out_x) return;
        for (double c : candidates)
            if (c == x) return;
        candidates.push_back(x);
    };
    if (best.has && !dom.contains(best.x)) add(best.x);
    add(s.mu);
    bool interior = dom.boundary_distance(s.mu) > kappa * s.sigma;
    if (interior) {
        if (have_q && q.c > 0.0) add(-q.b / (2.0 * q.c));
    } else {
        add(dom.nearest_boundary(s.mu));
    }

    for (double x : candidates) {
        double f = obj.evaluate(x);
        if (!have_out || f < out_f) {
            have_out = true;
            out_x = x;
            out_f = f;
        }
    }
    return {out_x, out_f};
}

namespace {

struct Engine {
    ExtendedObjective& obj;
    const RunConfig& cfg;
    SampleStore& store;
    Rng& rng;
    Domain dom;
    double sigma_target, sigma_min;
    long evals_start;

    GaussianState state;
    Sample sample;
    QuadModel quad;
    GaussianState fit_state{0.0, 1.0};
    bool have_fit = false;
    bool need_fit = true;
    double budget1, budget2;
    int n_next;
    BestPoint best;

    int iters = 0;
    int restarts = 0;
    std::vector<TraceRow> trace;

    Engine(ExtendedObjective& o, const RunConfig& c, SampleStore& st, Rng& r, GaussianState init)
        : obj(o), cfg(c), store(st), rng(r), dom(o.domain()), state(init) {
        sigma_target = cfg.sigma_target_hat * dom.length();
        sigma_min = cfg.sigma_min_hat * dom.length();
        evals_start = obj.eval_count();
        budget1 = cfg.gamma1;
        budget2 = cfg.gamma2;
        n_next = cfg.n0;
        for (const auto& e : store.entries()) best.update(e.x, e.fx, e.sigma_src);
    }

    long evals_used() const { return obj.eval_count() - evals_start; }

    void sample_and_fit() {
        double p = cfg.rejection_sampling ? cfg.reuse_prob : 0.0;
        std::size_t before = store.size();
        bool ok = false;
        try {
            sample = draw_sample(store, state, n_next, p, obj, rng);
            quad = fit_quadratic(sample.points);
            ok = true;
        } catch (const singular_fit_error&) {
        }
        if (!ok) {
            // fall back to fresh draws, widening up to 3 times
            int extra = 0;
            for (;;) {
                sample = draw_sample(store, state, cfg.n_max + extra, 0.0, obj, rng);
                try {
                    quad = fit_quadratic(sample.points);
                    break;
                } catch (const singular_fit_error&) {
                    if (++extra > 3) throw;
                }
            }
        }
        for (std::size_t k = before; k < store.size(); ++k) {
            const auto& e = store.entries()[k];
            best.update(e.x, e.fx, e.sigma_src);
        }
        fit_state = state;
        budget1 = cfg.gamma1;
        budget2 = cfg.gamma2;
        have_fit = true;
        need_fit = false;
    }

    // One pass of the inner stopping loop; returns the stop reason.
    StopReason iterate_until_stop() {
        for (;;) {
            if (iters >= cfg.max_iters) return StopReason::max_iters;
            if (evals_used() >= cfg.max_evals) return StopReason::max_evals;
            if (state.sigma < sigma_min) return StopReason::sigma_floor;
            ++iters;

            bool drifted = have_fit && std::abs(state.mu - fit_state.mu) >
                                           cfg.drift_refit_sigmas * fit_state.sigma;
            bool resample = !have_fit || need_fit || drifted;
            if (resample) sample_and_fit();

            if (state.sigma <= sigma_target) {
                auto r = stop_check(state, sample.points, dom, sigma_target, cfg.delta_f,
                                    cfg.kappa, cfg.stop_sigma_only);
                if (r) {
                    if (cfg.collect_trace)
                        trace.push_back({iters - 1, state.mu, state.sigma, 0.0,
                                         static_cast<int>(sample.points.size()), evals_used(),
                                         resample});
                    return *r;
                }
            }

            ErrorEstimates est =
                estimate_errors(sample.points, quad, fit_state, state, cfg.step_params());
            if (!resample && !std::isfinite(est.eps_hat_1 + est.eps_hat_2)) {
                // every importance weight underflowed; the estimators carry
                // no information at the current state
                sample_and_fit();
                resample = true;
                est = estimate_errors(sample.points, quad, fit_state, state, cfg.step_params());
            }
            StepParams eff = cfg.step_params();
            eff.gamma1 = budget1;
            eff.gamma2 = budget2;
            StepChoice choice = time_step(quad, state, est, eff);

            if (cfg.adaptivity) {
                double t_err = std::min(choice.parts.t_eps1, choice.parts.t_eps2);
                double t_move = std::min(choice.parts.t_mu, choice.parts.t_sigma);
                n_next = (t_err > t_move) ? cfg.n_min : cfg.n_max;
            }

            GaussianState next = flow_step_clamped(quad, state, choice.t, cfg.h_max, cfg.vartheta);
            double t_eff = std::min(choice.t, cfg.h_max);
            double spend_factor;
            if (curvature_is_zero(quad.b, quad.c)) {
                spend_factor = t_eff / state.sigma;
            } else {
                spend_factor = -std::expm1(-2.0 * quad.c * t_eff) / (2.0 * quad.c * state.sigma);
            }
            budget1 -= est.eps_hat_1 * spend_factor;
            budget2 -= est.eps_hat_2 * spend_factor;

            // Flow growth of sigma signals negative curvature (error
            // amplification): always sample next, even if the boundary
            // projection below ends up shrinking sigma.
            bool sigma_grew = next.sigma > state.sigma;
            if (!dom.contains(next.mu)) {
                next.mu = dom.nearest_boundary(next.mu);
                next.sigma *= cfg.vartheta;
            }

            need_fit = !cfg.sparse_sampling || sigma_grew ||
                       !(budget1 >= cfg.budget_refit_fraction * cfg.gamma1) ||
                       !(budget2 >= cfg.budget_refit_fraction * cfg.gamma2);

            if (cfg.collect_trace)
                trace.push_back({iters - 1, state.mu, state.sigma, choice.t,
                                 static_cast<int>(sample.points.size()), evals_used(), resample});
            state = next;
        }
    }

    // Postprocessing runs after the restart loop regardless of the stop
    // reason; it costs at most two evaluations.
    RunResult finish(StopReason reason) {
        RunResult result;
        result.stop_reason = reason;
        if (cfg.postprocess && have_fit) {
            auto [x, f] = postprocess(obj, dom, state, quad, have_fit, best, cfg.kappa);
            result.x_out = x;
            result.f_out = f;
        } else if (best.has) {
            if (dom.contains(best.x)) {
                result.x_out = best.x;
                result.f_out = best.f;
            } else {
                result.x_out = dom.clamp(best.x);
                result.f_out = obj.evaluate(result.x_out);
            }
        } else {
            result.x_out = dom.clamp(state.mu);
            result.f_out = obj.evaluate(result.x_out);
        }
        result.n_evals = evals_used();
        result.n_iters = iters;
        result.n_restarts = restarts;
        result.trace = std::move(trace);
        return result;
    }
};

} // namespace

RunResult run(ExtendedObjective& obj, const RunConfig& cfg, SampleStore& store, Rng& rng,
              std::optional<GaussianState> init) {
    cfg.validate();
    const Domain& dom = obj.domain();
    GaussianState start = init ? *init
                               : GaussianState{rng.uniform(dom.x_min, dom.x_max), dom.length()};
    if (!start.valid()) throw config_error("initial state must have finite mu and sigma > 0");

    Engine engine(obj, cfg, store, rng, start);
    StopReason reason;
    for (;;) {
        reason = engine.iterate_until_stop();
        bool restartable = reason == StopReason::converged_interior ||
                           reason == StopReason::converged_boundary ||
                           reason == StopReason::sigma_floor;
        if (!cfg.restart || !restartable || engine.restarts >= cfg.max_restarts) break;
        // Restarting is pointless when every in-domain value ever recorded
        // ties the best one (a flat objective): nothing better was
        // discovered and nothing worse was converged to.
        if (engine.best.has) {
            bool any_difference = false;
            for (const auto& e : store.entries()) {
                if (dom.contains(e.x) && e.fx != engine.best.f) {
                    any_difference = true;
                    break;
                }
            }
            if (!any_difference) break;
        }
        auto target = restart_target(engine.best, engine.state);
        if (!target) break;
        ++engine.restarts;
        engine.state = *target;
        engine.have_fit = false;
        engine.need_fit = true;
        engine.n_next = cfg.n0;
    }
    return engine.finish(reason);
}

RunResult run_boosted(ExtendedObjective& obj, const RunConfig& cfg, int cycles, SampleStore& store,
                      Rng& rng, std::optional<GaussianState> init) {
    if (cycles < 0) throw config_error("boosting cycles must be nonnegative");
    RunResult out;
    long total_evals = 0;
    int total_iters = 0;
    int total_restarts = 0;
    for (int cycle = 0; cycle <= cycles; ++cycle) {
        std::optional<GaussianState> cycle_init;
        if (cycle == 0 || !cfg.boost_random_restart) cycle_init = init;
        RunResult r = run(obj, cfg, store, rng, cycle_init);
        total_evals += r.n_evals;
        total_iters += r.n_iters;
        total_restarts += r.n_restarts;
        if (cycle == 0 || r.f_out < out.f_out) {
            out.x_out = r.x_out;
            out.f_out = r.f_out;
            out.stop_reason = r.stop_reason;
        }
        if (cfg.collect_trace)
            out.trace.insert(out.trace.end(), r.trace.begin(), r.trace.end());
    }
    out.n_evals = total_evals;
    out.n_iters = total_iters;
    out.n_restarts = total_restarts;
    return out;
}

} // namespace relaxopt
