#include "relaxopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace relaxopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
} // namespace

TruthInfo make_truth(const TestFunction& fn) {
    ExtendedObjective probe(fn.expression, fn.domain);
    double scale = probe.normalize().scale;
    GroundTruth gt = ground_truth(fn);
    TruthInfo truth;
    truth.min_value = scale * gt.min_value;
    truth.argmin = gt.argmin;
    truth.range = fn.domain.length();
    return truth;
}

bool is_success(const RunRecord& rec, const TruthInfo& truth, const SuccessRule& rule) {
    if (rec.failed) return false;
    if (rule.mode == SuccessMode::value_gap)
        return std::abs(rec.f_out - truth.min_value) <= rule.threshold;
    double nearest = kInf;
    for (double xb : truth.argmin) nearest = std::min(nearest, std::abs(rec.x_out - xb));
    return nearest <= rule.threshold * truth.range;
}

double evals_per_success(double n_f, double pi) { return pi > 0.0 ? n_f / pi : kInf; }

double efficiency_index(double n_f, double pi) {
    if (pi <= 0.0) return 0.0;
    if (pi >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - pi, 100.0 / n_f);
}

Metrics compute_metrics(std::span<const RunRecord> results, const TruthInfo& truth,
                        const SuccessRule& rule) {
    Metrics m;
    long valid = 0, successes = 0;
    double sum_evals = 0, sum_iters = 0, sum_tau = 0;
    double sum_gap = 0, sum_gap_c = 0;
    double sum_dx = 0, sum_dx_c = 0;
    for (const auto& rec : results) {
        ++m.runs;
        if (rec.failed) {
            ++m.failures;
            continue;
        }
        ++valid;
        sum_evals += static_cast<double>(rec.n_evals);
        sum_iters += static_cast<double>(rec.n_iters);
        sum_tau += rec.tau;
        double gap = std::abs(rec.f_out - truth.min_value);
        double dx = kInf;
        for (double xb : truth.argmin) dx = std::min(dx, std::abs(rec.x_out - xb));
        dx /= truth.range;
        sum_gap += gap;
        sum_dx += dx;
        if (is_success(rec, truth, rule)) {
            ++successes;
            sum_gap_c += gap;
            sum_dx_c += dx;
        }
    }
    if (valid == 0) {
        m.n_f = 0;
        m.pi = 0;
        m.n_s = kInf;
        m.pi_100 = 0;
        m.delta = kNan;
        m.delta_c = kNan;
        m.delta_x = kNan;
        m.delta_c_x = kNan;
        return m;
    }
    double dv = static_cast<double>(valid);
    m.n_f = sum_evals / dv;
    m.pi = static_cast<double>(successes) / dv;
    m.n_s = evals_per_success(m.n_f, m.pi);
    m.pi_100 = efficiency_index(m.n_f, m.pi);
    m.delta = sum_gap / dv;
    m.delta_c = successes > 0 ? sum_gap_c / successes : kNan;
    m.delta_x = sum_dx / dv;
    m.delta_c_x = successes > 0 ? sum_dx_c / successes : kNan;
    m.n_i = sum_iters / dv;
    m.tau = sum_tau / dv;
    return m;
}

RunRecord run_once(const std::string& optimizer, const TestFunction& fn, const RunConfig& cfg,
                   int boosting, double noise_level, std::uint64_t run_seed,
                   long baseline_budget) {
    RunRecord rec;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ExtendedObjective obj(fn.expression, fn.domain, cfg.varpi, noise_level,
                              run_seed ^ 0x5deece66dull);
        obj.normalize();
        Rng rng(run_seed);
        RunResult r;
        if (optimizer == "algorithm") {
            SampleStore store;
            r = run_boosted(obj, cfg, boosting, store, rng);
        } else {
            BaselineConfig bcfg = default_baseline_config(baseline_from_name(optimizer));
            if (baseline_budget > 0) bcfg.max_evals = baseline_budget;
            r = run_baseline(obj, bcfg, rng);
        }
        rec.x_out = r.x_out;
        rec.f_out = r.f_out;
        rec.n_evals = r.n_evals;
        rec.n_iters = r.n_iters;
    } catch (const evaluation_error&) {
        rec.failed = true;
    }
    rec.tau = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::vector<RunRecord> run_many(const std::string& optimizer, const TestFunction& fn,
                                const RunConfig& cfg, int boosting, double noise_level,
                                int seeds, std::uint64_t master_seed, long baseline_budget,
                                const std::string& seed_tag) {
    std::vector<RunRecord> records;
    records.reserve(seeds);
    std::string tag = seed_tag.empty() ? optimizer : seed_tag;
    for (int i = 0; i < seeds; ++i) {
        std::uint64_t seed = derive_seed(master_seed, tag, fn.name, static_cast<std::uint64_t>(i));
        records.push_back(run_once(optimizer, fn, cfg, boosting, noise_level, seed, baseline_budget));
    }
    return records;
}

namespace {

Metrics aggregate(std::span<const Metrics> per_function) {
    Metrics agg;
    if (per_function.empty()) return agg;
    double n = 0, nf = 0, pi = 0, delta = 0, ni = 0, tau = 0, dx = 0;
    double delta_c = 0, dxc = 0;
    long with_dc = 0;
    for (const auto& m : per_function) {
        n += 1;
        nf += m.n_f;
        pi += m.pi;
        delta += m.delta;
        ni += m.n_i;
        tau += m.tau;
        dx += m.delta_x;
        agg.runs += m.runs;
        agg.failures += m.failures;
        if (!std::isnan(m.delta_c)) {
            delta_c += m.delta_c;
            dxc += m.delta_c_x;
            ++with_dc;
        }
    }
    agg.n_f = nf / n;
    agg.pi = pi / n;
    agg.n_s = evals_per_success(agg.n_f, agg.pi);
    agg.pi_100 = efficiency_index(agg.n_f, agg.pi);
    agg.delta = delta / n;
    agg.delta_c = with_dc > 0 ? delta_c / with_dc : kNan;
    agg.delta_x = dx / n;
    agg.delta_c_x = with_dc > 0 ? dxc / with_dc : kNan;
    agg.n_i = ni / n;
    agg.tau = tau / n;
    return agg;
}

} // namespace

SuiteResult run_suite(const SuiteConfig& cfg) {
    std::vector<const TestFunction*> selection;
    for (const auto& fn : load_corpus()) {
        if (cfg.class_filter.empty() || fn.has_attribute(cfg.class_filter))
            selection.push_back(&fn);
    }
    if (selection.empty()) throw config_error("no corpus function matches class: " + cfg.class_filter);

    SuiteResult result;
    for (const auto& opt : cfg.optimizers) {
        std::vector<Metrics> per_fn;
        for (const TestFunction* fn : selection) {
            TruthInfo truth = make_truth(*fn);
            long budget = 0;
            if (auto it = cfg.baseline_budgets.find(opt); it != cfg.baseline_budgets.end())
                budget = it->second;
            auto records = run_many(opt, *fn, cfg.run_config, cfg.boosting, 0.0, cfg.seeds,
                                    cfg.master_seed, budget);
            Metrics m = compute_metrics(records, truth, cfg.rule);
            per_fn.push_back(m);
            result.per_function.emplace_back(opt, fn->name, m);
        }
        ReportRow row;
        row.label = opt;
        row.metrics = aggregate(per_fn);
        row.track_iters = opt == "algorithm";
        result.rows.push_back(row);
    }
    return result;
}

SuiteResult run_noisy_suite(const NoisySuiteConfig& cfg) {
    RunConfig rc = cfg.run_config;
    rc.restart = false;
    rc.sparse_sampling = false;
    rc.adaptivity = false;
    rc.stop_sigma_only = true;

    SuiteResult result;
    for (const auto& name : cfg.functions) {
        const TestFunction* fn = find_function(name);
        if (!fn) throw config_error("unknown corpus function: " + name);
        TruthInfo truth = make_truth(*fn);
        for (double zeta : cfg.noise_levels) {
            char tag[64];
            std::snprintf(tag, sizeof tag, "algorithm|zeta=%g", zeta);
            auto records =
                run_many("algorithm", *fn, rc, 0, zeta, cfg.seeds, cfg.master_seed, 0, tag);
            Metrics m = compute_metrics(records, truth, location_gap_rule());
            char label[96];
            std::snprintf(label, sizeof label, "%s zeta=%g", name.c_str(), zeta);
            ReportRow row;
            row.label = label;
            row.metrics = m;
            row.track_iters = true;
            row.noisy = true;
            result.rows.push_back(row);
            result.per_function.emplace_back(label, name, m);
        }
    }
    return result;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "md" || name == "markdown") return ReportFormat::markdown;
    if (name == "json") return ReportFormat::json;
    throw config_error("unknown report format: " + name);
}

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                        bool include_tau) {
    bool noisy = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.noisy; });
    std::ostringstream out;
    auto cell = [&](const ReportRow& r, int col) -> std::string {
        const Metrics& m = r.metrics;
        switch (col) {
        case 0: return r.label;
        case 1: return fmt(m.n_f);
        case 2: return fmt(m.pi);
        case 3: return fmt(m.n_s);
        case 4: return fmt(m.pi_100);
        case 5: return include_tau ? fmt(m.tau) : "";
        case 6: return r.track_iters ? fmt(m.n_i) : "";
        case 7: return fmt(noisy ? m.delta_x : m.delta);
        case 8: return fmt(noisy ? m.delta_c_x : m.delta_c);
        }
        return "";
    };
    const char* headers[9] = {"name", "n_f",  "pi",    "n_s",
                              "pi_100", "tau", "n_i", noisy ? "delta_x" : "delta",
                              noisy ? "delta_c_x" : "delta_c"};
    const char* pretty[9] = {"Optimizer", "N_f", "Pi",  "N_s",
                             "Pi_100",    "tau", "N_i", noisy ? "Delta x" : "Delta",
                             noisy ? "Delta_c x" : "Delta_c"};

    switch (format) {
    case ReportFormat::csv: {
        for (int c = 0; c < 9; ++c) out << (c ? "," : "") << headers[c];
        out << "\n";
        for (const auto& r : rows) {
            for (int c = 0; c < 9; ++c) out << (c ? "," : "") << cell(r, c);
            out << "\n";
        }
        break;
    }
    case ReportFormat::markdown: {
        out << "|";
        for (int c = 0; c < 9; ++c) out << " " << pretty[c] << " |";
        out << "\n|";
        for (int c = 0; c < 9; ++c) out << "---|";
        out << "\n";
        for (const auto& r : rows) {
            out << "|";
            for (int c = 0; c < 9; ++c) out << " " << cell(r, c) << " |";
            out << "\n";
        }
        break;
    }
    case ReportFormat::json: {
        out << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << "  {";
            for (int c = 0; c < 9; ++c) {
                std::string v = cell(rows[i], c);
                out << (c ? ", " : "") << "\"" << headers[c] << "\": ";
                if (c == 0)
                    out << "\"" << v << "\"";
                else if (v.empty() || v == "inf" || v == "-inf")
                    out << (v.empty() ? "null" : (v == "inf" ? "\"inf\"" : "\"-inf\""));
                else
                    out << v;
            }
            out << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        out << "]\n";
        break;
    }
    }
    return out.str();
}

} // namespace relaxopt
