#include "relaxopt/objective.hpp"

#include <cmath>

namespace relaxopt {

double ExtendedObjective::evaluate(double x) {
    if (!std::isfinite(x)) throw evaluation_error(x);
    double nu = extension_slope();
    double value;
    if (x < domain_.x_min) {
        value = raw(domain_.x_min) + nu * (domain_.x_min - x);
    } else if (x > domain_.x_max) {
        value = raw(domain_.x_max) + nu * (x - domain_.x_max);
    } else {
        value = raw(x);
    }
    ++eval_count_;
    if (!std::isfinite(value)) throw evaluation_error(x);
    if (noise_level_ > 0.0) value += noise_level_ * noise_rng_.normal();
    return value;
}

NormalizeResult ExtendedObjective::normalize(int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("normalize needs at least 2 grid points");
    double lo = INFINITY, hi = -INFINITY;
    double h = domain_.length() / (grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        double x = (i == grid_points - 1) ? domain_.x_max : domain_.x_min + i * h;
        double v = f_(x);
        if (!std::isfinite(v)) throw evaluation_error(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double osc = hi - lo;
    if (osc <= 0.0) {
        scale_ = 1.0;
        return {1.0, true};
    }
    scale_ = 1.0 / osc;
    return {scale_, false};
}

} // namespace relaxopt
