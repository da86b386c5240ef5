#include "relaxopt/quadratic_fit.hpp"

#include <cmath>

namespace relaxopt {

QuadModel fit_quadratic(std::span<const SamplePoint> points) {
    std::size_t n = points.size();
    if (n < 3) throw singular_fit_error();

    double mean = 0.0;
    for (const auto& pt : points) mean += pt.x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& pt : points) var += (pt.x - mean) * (pt.x - mean);
    var /= static_cast<double>(n);
    if (!(var > 0.0)) throw singular_fit_error(); // all abscissae equal
    double sd = std::sqrt(var);

    // averaged moments of the standardized abscissae (s0 = 1, s1 = 0, s2 = 1)
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    double t0 = 0.0, t1 = 0.0, t2 = 0.0;
    for (const auto& pt : points) {
        double z = (pt.x - mean) / sd;
        double z2 = z * z;
        s1 += z;
        s2 += z2;
        s3 += z2 * z;
        s4 += z2 * z2;
        t0 += pt.fx;
        t1 += pt.fx * z;
        t2 += pt.fx * z2;
    }
    double inv_n = 1.0 / static_cast<double>(n);
    s1 *= inv_n;
    s2 *= inv_n;
    s3 *= inv_n;
    s4 *= inv_n;
    t0 *= inv_n;
    t1 *= inv_n;
    t2 *= inv_n;

    // Cramer's rule on the 3x3 averaged moment matrix
    double det = 1.0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s3 * s2) + s2 * (s1 * s3 - s2 * s2);
    if (std::abs(det) < 1e-10) throw singular_fit_error();

    double det_a = t0 * (s2 * s4 - s3 * s3) - s1 * (t1 * s4 - s3 * t2) + s2 * (t1 * s3 - s2 * t2);
    double det_b = 1.0 * (t1 * s4 - t2 * s3) - t0 * (s1 * s4 - s3 * s2) + s2 * (s1 * t2 - t1 * s2);
    double det_c = 1.0 * (s2 * t2 - t1 * s3) - s1 * (s1 * t2 - t1 * s2) + t0 * (s1 * s3 - s2 * s2);

    double alpha = det_a / det;
    double beta = det_b / det;
    double gamma = det_c / det;

    // undo z = (x - mean) / sd
    QuadModel q;
    q.c = gamma / (sd * sd);
    q.b = beta / sd - 2.0 * gamma * mean / (sd * sd);
    q.a = alpha - beta * mean / sd + gamma * mean * mean / (sd * sd);
    if (!(std::isfinite(q.a) && std::isfinite(q.b) && std::isfinite(q.c)))
        throw singular_fit_error();
    return q;
}

} // namespace relaxopt
