#ifndef RELAXOPT_OBJECTIVE_HPP
#define RELAXOPT_OBJECTIVE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "relaxopt/domain.hpp"
#include "relaxopt/rng.hpp"

namespace relaxopt {

// Raised when the wrapped function returns a non-finite value; carries the
// evaluation point. The run aborts rather than feeding NaNs to least squares.
struct evaluation_error : std::runtime_error {
    double x;
    explicit evaluation_error(double x_)
        : std::runtime_error("objective returned a non-finite value at x=" + std::to_string(x_)),
          x(x_) {}
};

struct NormalizeResult {
    double scale;
    bool degenerate; // constant function: left unscaled
};

// Wraps a black-box objective on [x_min, x_max]: extends it linearly to the
// whole real line with slope nu = varpi / (x_max - x_min), counts every call
// to the underlying function, and optionally adds Gaussian noise of level
// zeta per evaluation.
class ExtendedObjective {
public:
    ExtendedObjective(std::function<double(double)> f, Domain domain, double varpi = 10.0,
                      double noise_level = 0.0, std::uint64_t noise_seed = 0)
        : f_(std::move(f)), domain_(domain), varpi_(varpi), noise_level_(noise_level),
          noise_rng_(noise_seed) {
        domain_.validate();
        if (!(varpi_ > 0.0) || !std::isfinite(varpi_))
            throw std::invalid_argument("varpi must be positive and finite");
        if (noise_level_ < 0.0)
            throw std::invalid_argument("noise level must be nonnegative");
    }

    // Extended (and scaled) objective; one underlying call per invocation.
    double evaluate(double x);

    // Rescales so that max f - min f = 1 on a uniform grid. Grid evaluations
    // go through the raw function and do not touch eval_count.
    NormalizeResult normalize(int grid_points = 10001);

    const Domain& domain() const { return domain_; }
    double extension_slope() const { return varpi_ / domain_.length(); }
    double scale() const { return scale_; }
    double noise_level() const { return noise_level_; }
    long eval_count() const { return eval_count_; }
    void reset_count() { eval_count_ = 0; }

private:
    double raw(double x) const { return scale_ * f_(x); }

    std::function<double(double)> f_;
    Domain domain_;
    double varpi_;
    double noise_level_;
    double scale_ = 1.0;
    long eval_count_ = 0;
    Rng noise_rng_;
};

} // namespace relaxopt

#endif
