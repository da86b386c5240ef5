#ifndef RELAXOPT_BENCH_HPP
#define RELAXOPT_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaxopt/baselines.hpp"
#include "relaxopt/corpus.hpp"
#include "relaxopt/optimizer.hpp"

namespace relaxopt {

// Success rule: value gap |f(x~) - f(xbar)| <= 1e-3 on the normalized
// objective, or (noisy protocol) location gap |x~ - xbar| <= 0.05 (xmax - xmin).
enum class SuccessMode { value_gap, location_gap };

struct SuccessRule {
    SuccessMode mode = SuccessMode::value_gap;
    double threshold = 1e-3;
};

inline SuccessRule value_gap_rule() { return {SuccessMode::value_gap, 1e-3}; }
inline SuccessRule location_gap_rule() { return {SuccessMode::location_gap, 0.05}; }

// Ground truth against which runs are judged, in the normalized scale the
// runs see.
struct TruthInfo {
    double min_value = 0.0;      // normalized f at the global minimum
    std::vector<double> argmin;  // global minimizer locations (raw x)
    double range = 1.0;          // domain length
};

TruthInfo make_truth(const TestFunction& fn);

struct RunRecord {
    double x_out = 0.0;
    double f_out = 0.0;
    long n_evals = 0;
    int n_iters = 0;
    double tau = 0.0; // wall seconds
    bool failed = false;
};

bool is_success(const RunRecord& rec, const TruthInfo& truth, const SuccessRule& rule);

struct Metrics {
    double n_f = 0.0;
    double pi = 0.0;
    double n_s = 0.0;    // n_f / pi, +inf when pi = 0
    double pi_100 = 0.0; // 1 - (1 - pi)^(100/n_f)
    double delta = 0.0;
    double delta_c = 0.0; // NaN when no successes
    double n_i = 0.0;
    double tau = 0.0;
    double delta_x = 0.0;   // location-gap means (noisy tables)
    double delta_c_x = 0.0; // NaN when no successes
    long runs = 0;
    long failures = 0;
};

Metrics compute_metrics(std::span<const RunRecord> results, const TruthInfo& truth,
                        const SuccessRule& rule);

// n_s and pi_100 recomputed from already-averaged (n_f, pi); used both for
// single-function metrics and class aggregates.
double evals_per_success(double n_f, double pi);
double efficiency_index(double n_f, double pi);

// Runs one seeded instance. `optimizer` is "algorithm" or a baseline name;
// per-run seeds come from derive_seed and make the whole suite reproducible.
RunRecord run_once(const std::string& optimizer, const TestFunction& fn, const RunConfig& cfg,
                   int boosting, double noise_level, std::uint64_t run_seed,
                   long baseline_budget = 0);

std::vector<RunRecord> run_many(const std::string& optimizer, const TestFunction& fn,
                                const RunConfig& cfg, int boosting, double noise_level,
                                int seeds, std::uint64_t master_seed, long baseline_budget = 0,
                                const std::string& seed_tag = "");

struct ReportRow {
    std::string label;
    Metrics metrics;
    bool track_iters = false;
    bool noisy = false; // adds the location-gap columns
};

struct SuiteConfig {
    std::vector<std::string> optimizers = {"algorithm", "nelder_mead", "random_search",
                                           "differential_evolution", "simulated_annealing"};
    std::string class_filter; // attribute tag; empty = whole corpus
    int seeds = 100;
    std::uint64_t master_seed = 1;
    SuccessRule rule = value_gap_rule();
    RunConfig run_config;
    int boosting = 0;
    std::map<std::string, long> baseline_budgets; // per-optimizer overrides
};

struct SuiteResult {
    std::vector<ReportRow> rows; // one per optimizer (class aggregate)
    // per (optimizer, function) metrics for finer-grained checks
    std::vector<std::tuple<std::string, std::string, Metrics>> per_function;
};

// Class aggregation is the unweighted mean over member functions of the
// per-function metrics; n_s and pi_100 derive from the aggregated values.
SuiteResult run_suite(const SuiteConfig& cfg);

struct NoisySuiteConfig {
    std::vector<std::string> functions = {"DeJong1", "Schwefel", "Deltadprime10"};
    std::vector<double> noise_levels = {0.0, 0.01, 0.1, 0.5};
    int seeds = 100;
    std::uint64_t master_seed = 1;
    RunConfig run_config; // restart/sparse/adaptivity forced off, sigma-only stop
};

SuiteResult run_noisy_suite(const NoisySuiteConfig& cfg);

enum class ReportFormat { csv, markdown, json };

ReportFormat report_format_from_name(const std::string& name);

// Wall-clock column values are emitted only when include_tau is set; the
// default output is byte-identical across invocations with the same master
// seed.
std::string emit_report(const std::vector<ReportRow>& rows, ReportFormat format,
                        bool include_tau = false);

} // namespace relaxopt

#endif
