// Acceptance suite: one criterion per invocation (argv[1] = 1..11), or all
// when no argument is given. Each criterion prints a single pass/fail line.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "relaxopt/bench.hpp"
#include "relaxopt/gaussian_flow.hpp"
#include "relaxopt/quadratic_fit.hpp"
#include "relaxopt/step_control.hpp"

using namespace relaxopt;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s (%s)\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
    bool ok = true;
    std::string why;
    auto expect = [&](bool cond, const char* what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    };

    auto g = grad_F_quadratic({0, 0, 1}, {1.0, 1.0});
    expect(near(g.d_mu, 2.0, 1e-12) && near(g.d_sigma, 2.0, 1e-12), "grad_F_quadratic");

    auto fs = flow_step({0, 0, 1}, {1.0, 1.0}, 1.0);
    expect(near(fs.mu, std::exp(-2.0), 1e-12) && near(fs.sigma, std::exp(-2.0), 1e-12),
           "flow_step c>0");
    auto fl = flow_step({0, 1, 0}, {0.0, 1.0}, 0.5);
    expect(near(fl.mu, -0.5, 1e-12) && near(fl.sigma, 1.0, 1e-12), "flow_step c=0");
    auto fn = flow_step({0, 0, -1}, {0.0, 1.0}, 0.1);
    expect(near(fn.sigma, std::exp(0.2), 1e-12), "flow_step c<0");
    auto fc = flow_step_clamped({0, 0, 0}, {0.0, 1.0}, INFINITY, 1000.0, 0.95);
    expect(near(fc.sigma, 0.95, 1e-12), "flow_step_clamped flat");

    expect(near(acceptance_ratio({0.0, 0.0, 0.0, 2.0}, {0.0, 1.0}, 0.75), 0.75, 1e-12),
           "acceptance_ratio mode");
    expect(acceptance_ratio({0.3, 0.0, 0.0, 1.0}, {0.0, 1.0}, 0.75) == 0.0,
           "acceptance_ratio equal sigma");

    expect(near(likelihood(0.0, {0.0, 2.0}, {0.0, 1.0}), 2.0, 1e-12), "likelihood peak");
    expect(likelihood(0.7, {0.4, 1.3}, {0.4, 1.3}) == 1.0, "likelihood identity");
    expect(near(likelihood(3.0, {0.0, 2.0}, {0.0, 1.0}), 2.0 * std::exp(-27.0 / 8.0), 1e-12),
           "likelihood tail");

    std::vector<SamplePoint> pts;
    for (double x : {-1.0, -0.6, -0.2, 0.2, 0.6, 1.0}) pts.push_back({x, x * x * x});
    auto q = fit_quadratic(pts);
    StepParams p;
    auto est = estimate_errors(pts, q, {0.0, 1.0}, {0.0, 1.0}, p);
    expect(near(est.q_hat_1, std::sqrt(0.32), 1e-12), "Q_hat_1");
    expect(near(est.q_hat_2, std::sqrt(1.28), 1e-12), "Q_hat_2");

    ErrorEstimates zero;
    auto ts = time_step({0, 0, 1}, {0.0, 1.0}, zero, p);
    expect(near(ts.parts.t_sigma, -std::log(0.8) / 2.0, 1e-12), "T_sigma");
    auto tm = time_step({0, 1, 1}, {0.0, 1.0}, zero, p);
    expect(near(tm.parts.t_mu, -std::log(0.6) / 2.0, 1e-12), "T_mu");
    ErrorEstimates e01;
    e01.eps_hat_1 = 0.1;
    e01.eps_hat_2 = 0.1;
    auto te = time_step({0, 0, 1}, {0.0, 1.0}, e01, p);
    expect(std::isinf(te.parts.t_eps1), "T_eps undefined branch");
    auto tflat = time_step({0, 0, 0}, {0.0, 1.0}, zero, p);
    expect(std::isinf(tflat.t) && !std::isnan(tflat.t), "flat time step");

    expect(near(evals_per_success(149.8, 0.94), 159.4, 0.05), "N_s identity");
    expect(near(efficiency_index(149.8, 0.94), 1.0 - std::pow(0.06, 100.0 / 149.8), 1e-12),
           "Pi_100 identity");
    expect(near(efficiency_index(100.0, 0.5), 0.5, 1e-12), "Pi_100 unit exponent");

    report(1, ok, ok ? "formula unit suite matches hand values" : "mismatch at " + why);
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
    Rng rng(20240001);
    int bad_orth = 0, bad_grad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        double a0 = rng.uniform(-2, 2), a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2);
        double a3 = rng.uniform(-2, 2), a4 = rng.uniform(-2, 2);
        auto f = [&](double x) {
            return a0 + x * (a1 + x * (a2 + x * a3)) + a4 * std::sin(2.0 * x);
        };
        GaussianState st{rng.uniform(-3, 3), rng.uniform(0.1, 2.0)};
        int n = 6 + static_cast<int>(rng.below(11));
        std::vector<SamplePoint> pts;
        for (int i = 0; i < n; ++i) {
            double x = rng.normal(st.mu, st.sigma);
            pts.push_back({x, f(x)});
        }
        QuadModel q = fit_quadratic(pts);

        double r0 = 0, r1 = 0, r2 = 0, scale = 0;
        for (auto& pt : pts) {
            double e = pt.fx - q(pt.x);
            r0 += e;
            r1 += e * pt.x;
            r2 += e * pt.x * pt.x;
            scale += std::abs(pt.fx) * std::max(1.0, pt.x * pt.x);
        }
        double tol = 1e-8 * std::max(scale, 1e-6);
        if (std::abs(r0) > tol || std::abs(r1) > tol || std::abs(r2) > tol) ++bad_orth;

        // Monte Carlo gradient of F with f equals the one with q on the same
        // sample: the least-squares conditions annihilate the difference.
        double gf1 = 0, gf2 = 0, gq1 = 0, gq2 = 0, gscale = 0;
        for (auto& pt : pts) {
            double u = pt.x - st.mu;
            double b1 = u / (st.sigma * st.sigma);
            double b2 = (u - st.sigma) * (u + st.sigma) / (st.sigma * st.sigma * st.sigma);
            gf1 += pt.fx * b1;
            gf2 += pt.fx * b2;
            gq1 += q(pt.x) * b1;
            gq2 += q(pt.x) * b2;
            gscale += std::abs(pt.fx) * (std::abs(b1) + std::abs(b2));
        }
        double gtol = 1e-8 * std::max(gscale, 1e-6);
        if (std::abs(gf1 - gq1) > gtol || std::abs(gf2 - gq2) > gtol) ++bad_grad;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 instances: %d orthogonality misses, %d gradient-identity misses",
                  bad_orth, bad_grad);
    report(2, bad_orth == 0 && bad_grad == 0, buf);
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
    std::array<double, 5> f{1.0, 3.0, 1.0, 0.0, 1.0}; // x^4 + x^2 + 3x + 1
    double h = 1e-4;
    bool heat_ok = true;
    for (double mu : {-1.5, -0.3, 0.0, 0.7, 1.8}) {
        for (double sigma : {0.3, 0.8, 1.4}) {
            double dF_ds = (relaxed_F_polynomial(f, {mu, sigma + h}) -
                            relaxed_F_polynomial(f, {mu, sigma - h})) /
                           (2 * h);
            double d2F = (relaxed_F_polynomial(f, {mu + h, sigma}) -
                          2 * relaxed_F_polynomial(f, {mu, sigma}) +
                          relaxed_F_polynomial(f, {mu - h, sigma})) /
                         (h * h);
            double want = sigma * d2F;
            if (std::abs(dF_ds - want) > 1e-5 * std::max(1.0, std::abs(want))) heat_ok = false;
        }
    }

    std::array<double, 5> g{0.0, 0.0, 1.0, 0.0, 1.0}; // x^4 + x^2
    bool convex_ok = true;
    for (double mu = -2.0; mu <= 2.0001; mu += 0.2) {
        for (double sigma = 0.2; sigma <= 2.0001; sigma += 0.2) {
            double d2 = (relaxed_F_polynomial(g, {mu + h, sigma}) -
                         2 * relaxed_F_polynomial(g, {mu, sigma}) +
                         relaxed_F_polynomial(g, {mu - h, sigma})) /
                        (h * h);
            if (!(d2 > 0.0)) convex_ok = false;
        }
    }
    report(3, heat_ok && convex_ok,
           std::string("heat equation ") + (heat_ok ? "ok" : "FAILED") +
               ", convexity preservation " + (convex_ok ? "ok" : "FAILED"));
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
    ExtendedObjective obj([](double x) { return x * x; }, {-50.0, 50.0});
    SampleStore store;
    Rng rng(777);
    draw_sample(store, {0.0, 2.0}, 40000, 0.75, obj, rng); // history at sigma = 2
    int n = 10000;
    auto sample = draw_sample(store, {0.0, 1.0}, n, 0.75, obj, rng);
    std::vector<double> xs;
    xs.reserve(n);
    for (auto& p : sample.points) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        double cdf = 0.5 * (1.0 + std::erf(xs[i] / std::sqrt(2.0)));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    double crit = 1.94947 / std::sqrt(static_cast<double>(n)); // alpha = 0.001
    char buf[120];
    std::snprintf(buf, sizeof buf, "KS statistic %.5f vs critical %.5f at alpha=0.001", d, crit);
    report(4, d < crit, buf);
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
    SuiteConfig cfg;
    cfg.optimizers = {"algorithm"};
    cfg.class_filter = "uniformly convex";
    cfg.seeds = 100;
    cfg.master_seed = 1;
    auto res = run_suite(cfg);
    // the reference class is its smooth unimodal members; the remaining
    // uniformly convex entry reports under the non-smooth table
    std::vector<Metrics> per;
    for (auto& [opt, fname, m] : res.per_function) {
        const TestFunction* fn = find_function(fname);
        if (fn->has_attribute("smooth") && fn->has_attribute("unimodal")) per.push_back(m);
    }
    double nf = 0, pi = 0;
    for (auto& m : per) {
        nf += m.n_f;
        pi += m.pi;
    }
    nf /= static_cast<double>(per.size());
    pi /= static_cast<double>(per.size());
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%zu functions x 100 seeds: Pi=%.3f (need 1.0), N_f=%.1f (need [40,100])",
                  per.size(), pi, nf);
    report(5, per.size() == 4 && pi == 1.0 && nf >= 40.0 && nf <= 100.0, buf);
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
    SuiteConfig cfg;
    cfg.optimizers = {"algorithm"};
    cfg.seeds = 100;
    cfg.master_seed = 1;
    auto res = run_suite(cfg);
    const Metrics& m = res.rows[0].metrics;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "full corpus x 100 seeds: Pi=%.3f (need >=0.88), N_f=%.1f (need [100,220]), "
                  "Pi_100=%.3f (need >=0.6)",
                  m.pi, m.n_f, m.pi_100);
    report(6, m.pi >= 0.88 && m.n_f >= 100.0 && m.n_f <= 220.0 && m.pi_100 >= 0.6, buf);
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
    double pi[3], nf[3];
    for (int cycles = 0; cycles <= 2; ++cycles) {
        SuiteConfig cfg;
        cfg.optimizers = {"algorithm"};
        cfg.seeds = 100;
        cfg.master_seed = 1;
        cfg.boosting = cycles;
        auto res = run_suite(cfg);
        pi[cycles] = res.rows[0].metrics.pi;
        nf[cycles] = res.rows[0].metrics.n_f;
    }
    bool ok = pi[1] >= pi[0] && pi[2] >= pi[1] && nf[1] < 2.0 * nf[0];
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "Pi %.3f -> %.3f -> %.3f (nondecreasing), N_f %.1f -> %.1f (need < 2x)", pi[0],
                  pi[1], pi[2], nf[0], nf[1]);
    report(7, ok, buf);
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
    const char* baselines[] = {"nelder_mead", "random_search", "differential_evolution",
                               "simulated_annealing"};
    RunConfig rc;
    bool convex_ok = true;
    std::string detail;
    for (const char* b : baselines) {
        double pi_sum = 0;
        int n = 0;
        for (const auto& fn : load_corpus()) {
            if (!(fn.has_attribute("uniformly convex") && fn.has_attribute("smooth"))) continue;
            TruthInfo truth = make_truth(fn);
            auto recs = run_many(b, fn, rc, 0, 0.0, 100, 1);
            pi_sum += compute_metrics(recs, truth, value_gap_rule()).pi;
            ++n;
        }
        double pi = pi_sum / n;
        char frag[64];
        std::snprintf(frag, sizeof frag, "%s=%.3f ", b, pi);
        detail += frag;
        if (pi < 1.0) convex_ok = false;
    }

    double de_pi = 0;
    int n_multi = 0;
    for (const auto& fn : load_corpus()) {
        if (!(fn.has_attribute("multimodal") && fn.has_attribute("smooth") &&
              fn.has_attribute("interior min") && fn.has_attribute("non-convex")))
            continue;
        TruthInfo truth = make_truth(fn);
        auto recs = run_many("differential_evolution", fn, rc, 0, 0.0, 100, 1, 5000);
        de_pi += compute_metrics(recs, truth, value_gap_rule()).pi;
        ++n_multi;
    }
    de_pi /= n_multi;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "convex class: %s| DE multimodal-smooth (%d fns) Pi=%.3f (need >=0.85)",
                  detail.c_str(), n_multi, de_pi);
    report(8, convex_ok && de_pi >= 0.85, buf);
}

// ---------------------------------------------------------------- criterion 9
void criterion_9() {
    NoisySuiteConfig cfg;
    cfg.seeds = 100;
    cfg.master_seed = 1;
    cfg.functions = {"DeJong1", "Schwefel", "Deltadprime10"};
    cfg.noise_levels = {0.01, 0.5};
    auto res = run_noisy_suite(cfg);

    double dejong_low = 0;
    std::vector<std::pair<std::string, double>> high;
    for (auto& row : res.rows) {
        if (row.label.find("DeJong1 zeta=0.01") != std::string::npos)
            dejong_low = row.metrics.pi;
        if (row.label.find("zeta=0.5") != std::string::npos)
            high.emplace_back(row.label, row.metrics.pi);
    }

    // calibrated uniform-chance floor per function
    bool high_ok = true;
    std::string detail;
    for (auto& [label, pi] : high) {
        std::string fname = label.substr(0, label.find(' '));
        const TestFunction* fn = find_function(fname);
        TruthInfo truth = make_truth(*fn);
        Rng rng(42);
        int hits = 0, trials = 20000;
        for (int i = 0; i < trials; ++i) {
            double x = rng.uniform(fn->domain.x_min, fn->domain.x_max);
            double nearest = INFINITY;
            for (double xb : truth.argmin) nearest = std::min(nearest, std::abs(x - xb));
            if (nearest <= 0.05 * truth.range) ++hits;
        }
        double floor = static_cast<double>(hits) / trials;
        char frag[96];
        std::snprintf(frag, sizeof frag, "%s Pi=%.2f floor=%.3f; ", fname.c_str(), pi, floor);
        detail += frag;
        if (pi < 2.0 * floor) high_ok = false;
    }
    char buf[320];
    std::snprintf(buf, sizeof buf, "DeJong1 zeta=0.01 Pi=%.2f (need >=0.9); zeta=0.5: %s",
                  dejong_low, detail.c_str());
    report(9, dejong_low >= 0.9 && high_ok, buf);
}

// --------------------------------------------------------------- criterion 10
void criterion_10() {
    RunConfig cfg;
    cfg.restart = false;
    cfg.adaptivity = false;
    cfg.sparse_sampling = false;
    cfg.collect_trace = true;
    double sigma0 = 0.05;
    double theta = 0.975; // max(1 - upsilon1/(4K), 1 - upsilon2), K = 2
    int ok = 0, runs = 500;
    for (int i = 0; i < runs; ++i) {
        ExtendedObjective obj([](double x) { return x * x + 0.1 * x * x * x; }, {-2.0, 2.0});
        SampleStore store;
        Rng rng(31000 + i);
        double mu0 = rng.uniform(-sigma0, sigma0); // |mu0|/sigma0 <= K/2 = 1
        auto r = run(obj, cfg, store, rng, GaussianState{mu0, sigma0});
        bool decayed = true;
        for (const auto& row : r.trace)
            if (row.sigma > sigma0 * std::pow(theta, row.iter) * (1 + 1e-12)) decayed = false;
        if (decayed) ++ok;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "geometric sigma decay held in %d/%d runs (need >= %d)", ok,
                  runs, static_cast<int>(0.9 * runs));
    report(10, ok >= static_cast<int>(0.9 * runs), buf);
}

// --------------------------------------------------------------- criterion 11
void criterion_11() {
    auto make_csv = []() {
        SuiteConfig cfg;
        cfg.optimizers = {"algorithm", "nelder_mead"};
        cfg.class_filter = "uniformly convex";
        cfg.seeds = 5;
        cfg.master_seed = 2024;
        auto res = run_suite(cfg);
        return emit_report(res.rows, ReportFormat::csv);
    };
    std::string a = make_csv();
    std::string b = make_csv();
    report(11, !a.empty() && a == b,
           a == b ? "repeated bench invocations emit byte-identical CSV"
                  : "CSV outputs differ between invocations");
}

} // namespace

int main(int argc, char** argv) {
    int which = argc > 1 ? std::atoi(argv[1]) : 0;
    void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8,
                            criterion_9, criterion_10, criterion_11};
    if (which >= 1 && which <= 11) {
        criteria[which - 1]();
    } else {
        for (auto* fn : criteria) fn();
    }
    return g_failures == 0 ? 0 : 1;
}
