#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "expression.hpp"
#include "relaxopt/bench.hpp"

using namespace relaxopt;

namespace {

// Flat key=value configuration using the reference parameter names.
void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in.good()) throw config_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw config_error("malformed config line: " + line);
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        double v;
        try {
            v = std::stod(value);
        } catch (...) {
            throw config_error("non-numeric value for " + key + ": " + value);
        }
        if (key == "n0") cfg.n0 = static_cast<int>(v);
        else if (key == "nmin") cfg.n_min = static_cast<int>(v);
        else if (key == "nmax") cfg.n_max = static_cast<int>(v);
        else if (key == "hmax") cfg.h_max = v;
        else if (key == "sigmatarget") cfg.sigma_target_hat = v;
        else if (key == "sigmamin") cfg.sigma_min_hat = v;
        else if (key == "tolf") cfg.delta_f = v;
        else if (key == "kappa") cfg.kappa = v;
        else if (key == "prob") cfg.reuse_prob = v;
        else if (key == "gamma1") cfg.gamma1 = v;
        else if (key == "gamma2") cfg.gamma2 = v;
        else if (key == "upsilon1") cfg.upsilon1 = v;
        else if (key == "upsilon2") cfg.upsilon2 = v;
        else if (key == "m") cfg.confidence_mult = v;
        else if (key == "aggregation") cfg.vartheta = v;
        else if (key == "penalty") cfg.varpi = v;
        else throw config_error("unknown config key: " + key);
    }
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_trace(const std::string& path, const RunResult& result) {
    std::ofstream out(path);
    out << "# iter mu sigma T n evals resampled\n";
    char buf[256];
    for (const auto& row : result.trace) {
        std::snprintf(buf, sizeof buf, "%d %.17g %.17g %.17g %d %ld %d\n", row.iter, row.mu,
                      row.sigma, row.t_step, row.n, row.evals, row.resampled ? 1 : 0);
        out << buf;
    }
}

int cmd_optimize(const std::string& target, std::optional<double> mu,
                 std::optional<double> sigma, std::uint64_t seed, const std::string& config_path,
                 int boost, const std::string& trace_path, const std::string& store_in,
                 const std::string& store_out, double noise) {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    cfg.collect_trace = !trace_path.empty();

    std::function<double(double)> f;
    Domain domain{};
    const TestFunction* fn = find_function(target);
    if (fn) {
        f = fn->expression;
        domain = fn->domain;
    } else {
        std::ifstream probe(target);
        if (!probe.good())
            throw config_error("no corpus function or readable objective file named '" + target +
                               "'");
        auto parsed = tools::load_objective_file(target);
        f = parsed.f;
        domain = {parsed.x_min, parsed.x_max};
    }

    ExtendedObjective obj(f, domain, cfg.varpi, noise, seed ^ 0x5deece66dull);
    double scale = obj.normalize().scale;
    SampleStore store;
    if (!store_in.empty()) {
        std::ifstream in(store_in);
        if (!in.good()) throw config_error("cannot open store file: " + store_in);
        store = SampleStore::load(in);
    }
    Rng rng(seed);
    std::optional<GaussianState> init;
    if (mu || sigma) {
        GaussianState st{mu.value_or(0.5 * (domain.x_min + domain.x_max)),
                         sigma.value_or(domain.length())};
        init = st;
    }
    RunResult result = run_boosted(obj, cfg, boost, store, rng, init);

    if (!trace_path.empty()) write_trace(trace_path, result);
    if (!store_out.empty()) {
        std::ofstream out(store_out);
        store.save(out);
    }
    // f is reported in the normalized scale the run used (oscillation 1)
    std::printf("x = %.12g\nf = %.12g\nf_raw = %.12g\nevals = %ld\niters = %d\nrestarts = %d\n"
                "stop = %s\n",
                result.x_out, result.f_out, result.f_out / scale, result.n_evals, result.n_iters,
                result.n_restarts, to_string(result.stop_reason));
    return 0;
}

int cmd_bench(const std::string& class_filter, const std::string& optimizers, int seeds,
              const std::string& noise_csv, const std::string& format_name,
              const std::string& out_path, std::uint64_t master_seed,
              const std::string& config_path, int boost, bool timings) {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);

    std::vector<ReportRow> rows;
    if (!noise_csv.empty()) {
        NoisySuiteConfig ncfg;
        ncfg.noise_levels.clear();
        for (const auto& z : split_csv(noise_csv)) ncfg.noise_levels.push_back(std::stod(z));
        ncfg.seeds = seeds;
        ncfg.master_seed = master_seed;
        ncfg.run_config = cfg;
        if (!class_filter.empty()) {
            ncfg.functions.clear();
            for (const auto& fn : load_corpus())
                if (fn.has_attribute(class_filter)) ncfg.functions.push_back(fn.name);
        }
        rows = run_noisy_suite(ncfg).rows;
    } else {
        SuiteConfig scfg;
        scfg.class_filter = class_filter;
        if (!optimizers.empty()) scfg.optimizers = split_csv(optimizers);
        scfg.seeds = seeds;
        scfg.master_seed = master_seed;
        scfg.run_config = cfg;
        scfg.boosting = boost;
        rows = run_suite(scfg).rows;
    }

    std::string report = emit_report(rows, report_format_from_name(format_name), timings);
    if (out_path.empty()) {
        std::cout << report;
    } else {
        std::ofstream out(out_path);
        out << report;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"derivative-free global minimizer for one-dimensional objectives"};
    app.require_subcommand(1);

    // optimize
    std::string target, config_path, trace_path, store_in, store_out;
    std::optional<double> mu, sigma;
    std::uint64_t seed = 1;
    int boost = 0;
    double noise = 0.0;
    auto* opt = app.add_subcommand("optimize", "minimize a corpus function or objective file");
    opt->add_option("target", target, "corpus function name or objective file")->required();
    double mu_val = 0, sigma_val = 0;
    auto* mu_opt = opt->add_option("--mu", mu_val, "initial mean");
    auto* sigma_opt = opt->add_option("--sigma", sigma_val, "initial standard deviation");
    opt->add_option("--seed", seed, "random seed");
    opt->add_option("--config", config_path, "key=value parameter file");
    opt->add_option("--boost", boost, "boosting cycles");
    opt->add_option("--trace", trace_path, "write the iteration trace to a file");
    opt->add_option("--store-in", store_in, "load a sample store before running");
    opt->add_option("--store-out", store_out, "save the sample store after running");
    opt->add_option("--noise", noise, "additive Gaussian noise level");

    // bench
    std::string class_filter, optimizers, noise_csv, format_name = "csv", out_path;
    int seeds = 100;
    std::uint64_t master_seed = 1;
    int bench_boost = 0;
    bool timings = false;
    std::string bench_config;
    auto* bench = app.add_subcommand("bench", "run the benchmark suite");
    bench->add_option("--class", class_filter, "restrict to one attribute class");
    bench->add_option("--optimizers", optimizers, "comma-separated optimizer list");
    bench->add_option("--seeds", seeds, "runs per function");
    bench->add_option("--noise", noise_csv, "noise levels; switches to the noisy protocol");
    bench->add_option("--format", format_name, "csv, md or json");
    bench->add_option("--out", out_path, "write the report to a file");
    bench->add_option("--master-seed", master_seed, "master seed for run-seed derivation");
    bench->add_option("--config", bench_config, "key=value parameter file");
    bench->add_option("--boost", bench_boost, "boosting cycles for the algorithm rows");
    bench->add_flag("--timings", timings, "include wall-clock times in the report");

    // corpus inspection
    std::string manifest_path;
    bool print_truth = false;
    auto* corpus_cmd = app.add_subcommand("corpus", "inspect the test-function corpus");
    corpus_cmd->add_option("--manifest", manifest_path, "write the corpus manifest to a file");
    corpus_cmd->add_flag("--truth", print_truth, "print grid-oracle minima");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*opt) {
            if (*mu_opt) mu = mu_val;
            if (*sigma_opt) sigma = sigma_val;
            return cmd_optimize(target, mu, sigma, seed, config_path, boost, trace_path,
                                store_in, store_out, noise);
        }
        if (*bench) {
            return cmd_bench(class_filter, optimizers, seeds, noise_csv, format_name, out_path,
                             master_seed, bench_config, bench_boost, timings);
        }
        if (*corpus_cmd) {
            if (print_truth) {
                std::printf("# name min_value n_argmin first_argmin\n");
                for (const auto& fn : load_corpus()) {
                    auto gt = ground_truth(fn);
                    std::printf("%s %.12g %zu %.12g\n", fn.name.c_str(), gt.min_value,
                                gt.argmin.size(), gt.argmin.empty() ? 0.0 : gt.argmin.front());
                }
            }
            if (!manifest_path.empty()) {
                std::ofstream out(manifest_path);
                export_manifest(out);
            }
            if (!print_truth && manifest_path.empty()) export_manifest(std::cout);
            return 0;
        }
    } catch (const evaluation_error& e) {
        std::cerr << "objective error: " << e.what() << "\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const tools::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
