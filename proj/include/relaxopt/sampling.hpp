#ifndef RELAXOPT_SAMPLING_HPP
#define RELAXOPT_SAMPLING_HPP

#include <iosfwd>
#include <vector>

#include "relaxopt/domain.hpp"
#include "relaxopt/objective.hpp"
#include "relaxopt/rng.hpp"

namespace relaxopt {

// One past evaluation: the point, its recorded value, and the Gaussian it
// was drawn from. The source Gaussian never changes, even when the point is
// reused at a later iteration; importance weights depend on it.
struct SampleQuad {
    double x;
    double fx;
    double mu_src;
    double sigma_src;
};

// The list Lambda of all draws made so far. Only grows within a run (and
// across boosting cycles).
class SampleStore {
public:
    const std::vector<SampleQuad>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    void append(const SampleQuad& q) { entries_.push_back(q); }
    void clear() { entries_.clear(); }

    // Flat text format, one quadruplet per line: x fx mu_src sigma_src.
    void save(std::ostream& out) const;
    static SampleStore load(std::istream& in);

private:
    std::vector<SampleQuad> entries_;
};

struct SamplePoint {
    double x;
    double fx;
};

struct Sample {
    std::vector<SamplePoint> points;
};

// Thinned acceptance probability for reusing a past draw as a sample from
// `target`: p * Gamma_target(x) / (M_k Gamma_src(x)) with the envelope
// constant M_k = (sigma_k/sigma_j) exp(-(mu_j-mu_k)^2 / (2(sigma_j^2-sigma_k^2))).
// The envelope only exists when sigma_j < sigma_k; otherwise the ratio is 0.
// Computed in log space: sigma ratios span several orders over a run.
double acceptance_ratio(const SampleQuad& candidate, const GaussianState& target, double p);

// Produces exactly n points distributed as Gamma_target: scans the store
// once, accepting each entry independently with acceptance_ratio, then fills
// any deficit with fresh draws (evaluating obj and appending the new
// quadruplets to the store). If more than n are accepted, subsamples n
// uniformly without replacement. Reused points cost zero evaluations.
Sample draw_sample(SampleStore& store, const GaussianState& target, int n, double p,
                   ExtendedObjective& obj, Rng& rng);

// Likelihood multiplier ell(x) = Gamma_current(x) / Gamma_fit(x) used by the
// importance-sampling estimators when the sample was drawn at fit_state.
double likelihood(double x, const GaussianState& fit_state, const GaussianState& current_state);

} // namespace relaxopt

#endif
