#ifndef RELAXOPT_QUADRATIC_FIT_HPP
#define RELAXOPT_QUADRATIC_FIT_HPP

#include <span>
#include <stdexcept>

#include "relaxopt/domain.hpp"
#include "relaxopt/sampling.hpp"

namespace relaxopt {

struct singular_fit_error : std::runtime_error {
    singular_fit_error() : std::runtime_error("least-squares system is singular") {}
};

// Least-squares quadratic through the 3x3 normal equations (moment matrix
// [[n, Sx, Sx2], [Sx, Sx2, Sx3], [Sx2, Sx3, Sx4]]). Points are centered and
// scaled internally before solving and the coefficients mapped back: raw
// moments of samples near mu ~ 500 destroy the conditioning otherwise.
// Requires >= 3 points with >= 3 distinct abscissae.
QuadModel fit_quadratic(std::span<const SamplePoint> points);

} // namespace relaxopt

#endif
