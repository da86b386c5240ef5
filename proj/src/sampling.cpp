#include "relaxopt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relaxopt {

void SampleStore::save(std::ostream& out) const {
    char buf[128];
    for (const auto& q : entries_) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", q.x, q.fx, q.mu_src,
                      q.sigma_src);
        out << buf;
    }
}

SampleStore SampleStore::load(std::istream& in) {
    SampleStore store;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        SampleQuad q;
        if (!(ls >> q.x >> q.fx >> q.mu_src >> q.sigma_src))
            throw std::runtime_error("malformed sample store line: " + line);
        store.append(q);
    }
    return store;
}

double acceptance_ratio(const SampleQuad& candidate, const GaussianState& target, double p) {
    double sigma_j = target.sigma;
    double sigma_k = candidate.sigma_src;
    if (sigma_j >= sigma_k) return 0.0; // no finite envelope
    GaussianState src{candidate.mu_src, sigma_k};
    double d = target.mu - candidate.mu_src;
    double log_m = std::log(sigma_k / sigma_j) +
                   d * d / (2.0 * (sigma_k * sigma_k - sigma_j * sigma_j));
    double log_pi =
        log_gaussian_pdf(candidate.x, target) - log_gaussian_pdf(candidate.x, src) - log_m;
    if (log_pi > 0.0) log_pi = 0.0; // guard rounding; pi_k <= 1 by construction
    return p * std::exp(log_pi);
}

Sample draw_sample(SampleStore& store, const GaussianState& target, int n, double p,
                   ExtendedObjective& obj, Rng& rng) {
    if (n < 3) throw std::invalid_argument("draw_sample needs n >= 3");

    std::vector<SamplePoint> accepted;
    std::size_t existing = store.size();
    for (std::size_t k = 0; k < existing; ++k) {
        const SampleQuad& q = store.entries()[k];
        double prob = acceptance_ratio(q, target, p);
        if (prob > 0.0 && rng.uniform01() <= prob) accepted.push_back({q.x, q.fx});
    }

    Sample sample;
    if (accepted.size() >= static_cast<std::size_t>(n)) {
        // uniform subsample without replacement (partial Fisher-Yates)
        for (int i = 0; i < n; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(accepted.size() - i));
            std::swap(accepted[i], accepted[j]);
        }
        accepted.resize(n);
        sample.points = std::move(accepted);
        return sample;
    }

    sample.points = std::move(accepted);
    while (sample.points.size() < static_cast<std::size_t>(n)) {
        double x = rng.normal(target.mu, target.sigma);
        double fx = obj.evaluate(x);
        store.append({x, fx, target.mu, target.sigma});
        sample.points.push_back({x, fx});
    }
    return sample;
}

double likelihood(double x, const GaussianState& fit_state, const GaussianState& current_state) {
    return std::exp(log_gaussian_pdf(x, current_state) - log_gaussian_pdf(x, fit_state));
}

} // namespace relaxopt
