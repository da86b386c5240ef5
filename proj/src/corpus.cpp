#include "relaxopt/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace relaxopt {

bool TestFunction::has_attribute(const std::string& attr) const {
    return std::find(attributes.begin(), attributes.end(), attr) != attributes.end();
}

namespace {

constexpr double pi = std::numbers::pi;

std::vector<TestFunction> build_corpus() {
    std::vector<TestFunction> fns;
    auto add = [&](std::string name, std::function<double(double)> f, double lo, double hi,
                   std::vector<std::string> attrs, std::vector<double> min_x = {},
                   std::optional<double> min_f = {}) {
        fns.push_back({std::move(name), std::move(f), {lo, hi}, std::move(attrs),
                       std::move(min_x), min_f});
    };

    // --- convex ---
    add("DeJong1", [](double x) { return x * x; }, -5.12, 5.12,
        {"quadratic", "uniformly convex", "strictly convex", "convex", "smooth", "unimodal",
         "interior min"},
        {0.0}, 0.0);
    add("P104", [](double x) { return (-5.0 + 24.0 * x - 16.0 * x * x) * std::exp(-x); }, 1.9, 3.9,
        {"uniformly convex", "strictly convex", "convex", "smooth", "unimodal", "interior min"});
    add("P113",
        [](double x) { return -std::pow(x, 2.0 / 3.0) - std::cbrt(1.0 - x * x); }, 0.001, 0.99,
        {"uniformly convex", "strictly convex", "convex", "smooth", "unimodal", "interior min"});
    add("Zakharov", [](double x) { return 1.25 * x * x + 0.0625 * x * x * x * x; }, -5.0, 10.0,
        {"uniformly convex", "strictly convex", "convex", "smooth", "unimodal", "interior min"},
        {0.0}, 0.0);
    add("Highpower", [](double x) { return std::pow(x, 8.0); }, -2.0, 2.0,
        {"strictly convex", "convex", "smooth", "unimodal", "interior min"}, {0.0}, 0.0);
    add("Singular", [](double x) { return 1.0 / (1.0 - x) + 1.0 / x; }, 0.01, 0.99,
        {"uniformly convex", "strictly convex", "convex", "non-smooth", "discontinuous",
         "unimodal", "interior min"},
        {0.5}, 4.0);
    add("V", [](double x) { return std::abs(0.5 - x); }, -2.0, 2.0,
        {"convex", "non-smooth", "unimodal", "interior min"}, {0.5}, 0.0);
    add("Identity", [](double x) { return x; }, -3.0, 3.0,
        {"linear", "convex", "smooth", "unimodal", "boundary min"}, {-3.0}, -3.0);
    add("Zero", [](double) { return 0.0; }, -3.0, 3.0,
        {"linear", "convex", "smooth", "unimodal", "boundary min", "interior min",
         "multiple global min"},
        {-3.0}, 0.0);

    // --- non-convex unimodal ---
    add("Flatnonconvex", [](double x) { return 1.0 - std::cos(std::pow(x, 5.0)); }, -pi, pi,
        {"non-convex", "smooth", "unimodal", "interior min", "oscillatory"}, {0.0}, 0.0);
    add("Michalewicz",
        [](double x) {
            double s = std::sin(x * x / pi);
            return -std::sin(x) * std::pow(s, 20.0);
        },
        0.0, pi, {"non-convex", "smooth", "unimodal", "interior min"});
    add("P118",
        [](double x) { return x < 3.0 ? (x - 2.0) * (x - 2.0) : 2.0 * std::log(x - 2.0) + 1.0; },
        0.0, 6.0, {"non-convex", "smooth", "unimodal", "interior min"}, {2.0}, 0.0);
    add("Cusp", [](double x) { return std::sqrt(std::abs(x)); }, -3.0, 2.0,
        {"non-convex", "non-smooth", "unimodal", "interior min"}, {0.0}, 0.0);
    add("VStep",
        [](double x) { return std::abs(x - 5.0) < 1.0 ? 0.5 * std::abs(x - 5.0) : 1.0; }, 0.0,
        10.0, {"non-convex", "non-smooth", "discontinuous", "unimodal", "interior min"}, {5.0},
        0.0);

    // --- non-convex smooth multimodal ---
    add("Delta10",
        [](double x) {
            double s = 0.0;
            for (int k = 1; k <= 10; ++k) s += std::cos(2.0 * pi * k * x);
            return -s;
        },
        -0.5, 0.5, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"}, {0.0},
        -10.0);
    add("Deltadprime10",
        [](double x) {
            double s = 0.0;
            for (int k = 1; k <= 10; ++k)
                s += 4.0 * pi * pi * k * k * std::cos(2.0 * pi * k * x);
            return -s;
        },
        -0.5, 0.5, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"}, {0.0},
        -4.0 * pi * pi * 385.0);
    add("Deltaprime10",
        [](double x) {
            double s = 0.0;
            for (int k = 1; k <= 10; ++k) s += 2.0 * pi * k * std::sin(2.0 * pi * k * x);
            return s;
        },
        -0.5, 0.5, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("Doublewell", [](double x) { return -x * x + x * x * x * x; }, -2.0, 2.0,
        {"non-convex", "smooth", "multimodal", "bimodal", "interior min", "multiple global min"},
        {-std::sqrt(0.5), std::sqrt(0.5)}, -0.25);
    add("Forrester",
        [](double x) {
            double u = 2.0 - 6.0 * x;
            return -u * u * std::sin(4.0 - 12.0 * x);
        },
        0.0, 1.0, {"non-convex", "smooth", "multimodal", "interior min"});
    add("Griewangk",
        [](double x) { return 1.0 + x * x / 4000.0 - std::cos(x); }, -600.0, 600.0,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"}, {0.0}, 0.0);
    add("Infiniteglobalmin",
        [](double x) {
            if (x == 0.0) return 0.0;
            double s = std::sin(1.0 / x);
            return x * x * s * s;
        },
        -3.0, 2.0,
        {"non-convex", "smooth", "multimodal", "interior min", "multiple global min",
         "oscillatory"},
        {1.0 / pi}, 0.0);
    add("P102", [](double x) { return std::sin(x) + std::sin(3.33333 * x); }, -2.7, 7.5,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P103",
        [](double x) {
            double s = 0.0;
            for (int j = 1; j <= 6; ++j) s += j * std::sin(j + (j + 1) * x);
            return s;
        },
        -2.7, 7.5, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P105", [](double x) { return (-1.4 + 3.0 * x) * std::sin(18.0 * x); }, 0.0, 1.2,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P106", [](double x) { return std::exp(-x * x) * (-x - std::sin(x)); }, -10.0, 10.0,
        {"non-convex", "smooth", "multimodal", "interior min"});
    add("P107",
        [](double x) {
            return 3.0 - 0.84 * x + std::log(x) + std::sin(x) + std::sin(10.0 * x / 3.0);
        },
        2.7, 7.5, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P108",
        [](double x) {
            double s = 0.0;
            for (int k = 1; k <= 6; ++k) s += k * std::cos((k + 1) * x + k);
            return -s;
        },
        -10.0, 10.0, {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P109", [](double x) { return std::sin(2.0 * x / 3.0) + std::sin(x); }, 3.1, 20.4,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("P110", [](double x) { return -x * std::sin(x); }, 0.0, 10.0,
        {"non-convex", "smooth", "multimodal", "interior min"});
    add("P111", [](double x) { return 2.0 * std::cos(x) + std::cos(2.0 * x); }, -pi / 2.0,
        2.0 * pi,
        {"non-convex", "smooth", "multimodal", "interior min", "multiple global min"},
        {2.0 * pi / 3.0, 4.0 * pi / 3.0}, -1.5);
    add("P112",
        [](double x) {
            double c = std::cos(x), s = std::sin(x);
            return c * c * c + s * s * s;
        },
        0.0, 2.0 * pi,
        {"non-convex", "smooth", "multimodal", "interior min", "multiple global min",
         "oscillatory"},
        {pi, 1.5 * pi}, -1.0);
    add("P114", [](double x) { return -std::exp(-x) * std::sin(2.0 * pi * x); }, 0.0, 4.0,
        {"non-convex", "smooth", "multimodal", "interior min"});
    add("P115", [](double x) { return (6.0 - 5.0 * x + x * x) / (1.0 + x * x); }, -5.0, 5.0,
        {"non-convex", "smooth", "multimodal", "bimodal", "interior min"});
    add("P120", [](double x) { return std::exp(-x * x) * (-x + std::sin(x)); }, -10.0, 10.0,
        {"non-convex", "smooth", "multimodal", "interior min"});
    add("P121", [](double x) { return x * std::cos(2.0 * x) + x * std::sin(x); }, 0.0, 10.0,
        {"non-convex", "smooth", "multimodal", "interior min"});
    add("P122",
        [](double x) {
            double s = std::sin(x);
            return std::exp(-3.0 * x) - s * s * s;
        },
        0.0, 20.0, {"non-convex", "smooth", "multimodal", "interior min"});
    add("Schwefel", [](double x) { return -x * std::sin(std::sqrt(std::abs(x))); }, -500.0, 500.0,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"});
    add("T1", [](double x) { return x * x - std::cos(10.0 * x); }, -3.0, 3.0,
        {"non-convex", "smooth", "multimodal", "interior min", "oscillatory"}, {0.0}, -1.0);
    add("Unbalanceddoublewell",
        [](double x) { return x / 4.0 - x * x + x * x * x * x; }, -1.5, 1.5,
        {"non-convex", "smooth", "multimodal", "bimodal", "interior min"});

    // --- non-convex non-smooth multimodal ---
    add("Infinitelocalmin",
        [](double x) {
            if (x == 0.0) return 1.0; // the oscillation has no limit at 0
            double s = std::sin(1.0 / x);
            return x * x + s * s;
        },
        -2.0, 3.0,
        {"non-convex", "non-smooth", "multimodal", "interior min", "oscillatory"});
    add("MultiCusp",
        [](double x) {
            double prod = std::abs(x);
            for (int j = 1; j <= 5; ++j) {
                double sign = (j % 2 == 0) ? 1.0 : -1.0;
                prod *= std::sqrt(std::abs(x - sign * j / 10.0));
            }
            return prod;
        },
        -1.0, 1.0,
        {"non-convex", "non-smooth", "multimodal", "interior min", "multiple global min"},
        {0.0, -0.1, 0.2, -0.3, 0.4, -0.5}, 0.0);
    add("Quantum",
        [](double x) {
            double s2 = std::sin(2.0 * x), s5 = std::sin(5.0 * x);
            return std::floor(5.0 * (s2 * s2 + s5 * s5));
        },
        0.0, pi,
        {"non-convex", "non-smooth", "discontinuous", "multimodal", "interior min",
         "boundary min", "multiple global min"},
        {0.0, pi}, 0.0);
    add("QuantumconcaveA",
        [](double x) { return x + std::floor(-5.0 * x * x) / 5.0; }, 0.0, 2.0,
        {"non-convex", "non-smooth", "discontinuous", "concave", "multimodal", "interior min"});
    add("Quantumconvex", [](double x) { return std::floor(5.0 * x * x); }, -1.0, 2.0,
        {"non-convex", "non-smooth", "discontinuous", "multimodal", "interior min"}, {0.0}, 0.0);
    add("Step", [](double x) { return std::abs(x - 5.0) < 1.0 ? 0.0 : 1.0; }, 0.0, 10.0,
        {"non-convex", "non-smooth", "discontinuous", "multimodal", "interior min",
         "multiple global min"},
        {5.0}, 0.0);

    // --- non-convex boundary minima ---
    add("Asymetricconcavequartic",
        [](double x) { return x - x * x - 0.01 * x * x * x * x; }, -3.0, 3.0,
        {"non-convex", "smooth", "concave", "multimodal", "bimodal", "boundary min"}, {-3.0},
        -12.81);
    add("Concaveparabola", [](double x) { return -x - x * x; }, -3.0, 3.0,
        {"non-convex", "smooth", "concave", "unimodal", "boundary min"}, {3.0}, -12.0);
    add("Concavequartic",
        [](double x) { return -x * x - 0.01 * x * x * x * x; }, -3.0, 3.0,
        {"non-convex", "smooth", "concave", "multimodal", "bimodal", "boundary min",
         "multiple global min"},
        {-3.0, 3.0}, -9.81);
    add("QuantumconcaveB",
        [](double x) { return -x + std::floor(-5.0 * x * x) / 5.0; }, 0.0, 2.0,
        {"non-convex", "non-smooth", "discontinuous", "concave", "unimodal", "boundary min"},
        {2.0}, -6.0);
    add("Wedge", [](double x) { return -std::abs(1.0 + x); }, -2.0, 2.0,
        {"non-convex", "non-smooth", "concave", "multimodal", "bimodal", "boundary min"}, {2.0},
        -3.0);

    return fns;
}

} // namespace

const std::vector<TestFunction>& load_corpus() {
    static const std::vector<TestFunction> corpus = build_corpus();
    return corpus;
}

const TestFunction* find_function(const std::string& name) {
    for (const auto& fn : load_corpus())
        if (fn.name == name) return &fn;
    return nullptr;
}

std::vector<std::pair<std::string, int>> attribute_counts() {
    std::map<std::string, int> counts;
    for (const auto& fn : load_corpus())
        for (const auto& a : fn.attributes) ++counts[a];
    return {counts.begin(), counts.end()};
}

namespace {

// golden-section refinement on [lo, hi]; assumes the bracket holds a local
// minimum of a piecewise-continuous function
std::pair<double, double> refine_min(const std::function<double(double)>& f, double lo,
                                     double hi) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace

GroundTruth ground_truth(const TestFunction& fn, int grid_points) {
    if (grid_points < 10) throw std::invalid_argument("ground_truth needs a dense grid");
    const auto& f = fn.expression;
    double a = fn.domain.x_min, b = fn.domain.x_max;
    double h = (b - a) / (grid_points - 1);

    std::vector<double> values(grid_points);
    double vmin = INFINITY, vmax = -INFINITY;
    for (int i = 0; i < grid_points; ++i) {
        double x = (i == grid_points - 1) ? b : a + i * h;
        values[i] = f(x);
        vmin = std::min(vmin, values[i]);
        vmax = std::max(vmax, values[i]);
    }

    double tol = 1e-7 * std::max(1.0, vmax - vmin);
    GroundTruth truth;
    truth.max_value = vmax;
    truth.min_value = vmin;

    // group near-minimal grid indices into clusters, refine one point each
    int i = 0;
    while (i < grid_points) {
        if (values[i] > vmin + tol) {
            ++i;
            continue;
        }
        int best = i;
        int j = i;
        while (j < grid_points && values[j] <= vmin + tol) {
            if (values[j] < values[best]) best = j;
            ++j;
        }
        double lo = a + std::max(0, best - 1) * h;
        double hi = std::min(b, a + (best + 1) * h);
        auto [x_ref, f_ref] = refine_min(f, lo, hi);
        if (values[best] < f_ref) {
            x_ref = a + best * h;
            f_ref = values[best];
        }
        truth.argmin.push_back(x_ref);
        truth.min_value = std::min(truth.min_value, f_ref);
        i = j;
    }
    return truth;
}

void export_manifest(std::ostream& out) {
    char buf[64];
    for (const auto& fn : load_corpus()) {
        out << fn.name << " | ";
        std::snprintf(buf, sizeof buf, "%.17g", fn.domain.x_min);
        out << buf << " | ";
        std::snprintf(buf, sizeof buf, "%.17g", fn.domain.x_max);
        out << buf << " | ";
        for (std::size_t k = 0; k < fn.attributes.size(); ++k)
            out << (k ? "," : "") << fn.attributes[k];
        out << " | ";
        if (fn.known_min_f) {
            std::snprintf(buf, sizeof buf, "%.17g", *fn.known_min_f);
            out << buf;
        } else {
            out << "derived";
        }
        out << " | ";
        for (std::size_t k = 0; k < fn.known_min_x.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", fn.known_min_x[k]);
            out << (k ? "," : "") << buf;
        }
        out << "\n";
    }
}

} // namespace relaxopt
