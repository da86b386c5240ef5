#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "relaxopt/gaussian_flow.hpp"
#include "relaxopt/rng.hpp"

using namespace relaxopt;

TEST_CASE("gradient of F for a quadratic surrogate") {
    auto g = grad_F_quadratic({0, 0, 1}, {1.0, 1.0});
    CHECK(g.d_mu == doctest::Approx(2.0));
    CHECK(g.d_sigma == doctest::Approx(2.0));

    auto flat = grad_F_quadratic({0, 0, 0}, {3.0, 2.0});
    CHECK(flat.d_mu == 0.0);
    CHECK(flat.d_sigma == 0.0);

    auto lin = grad_F_quadratic({0, 3, 0}, {5.0, 2.0});
    CHECK(lin.d_mu == doctest::Approx(3.0));
    CHECK(lin.d_sigma == 0.0);
}

TEST_CASE("closed-form quadratic flow") {
    SUBCASE("contraction for c > 0") {
        auto s = flow_step({0, 0, 1}, {1.0, 1.0}, 1.0);
        CHECK(s.mu == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
        CHECK(s.sigma == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    }
    SUBCASE("linear drift for c = 0 moves against b") {
        auto s = flow_step({0, 1, 0}, {0.0, 1.0}, 0.5);
        CHECK(s.mu == doctest::Approx(-0.5));
        CHECK(s.sigma == doctest::Approx(1.0));
    }
    SUBCASE("negative curvature expands sigma") {
        auto s = flow_step({0, 0, -1}, {0.0, 1.0}, 0.1);
        CHECK(s.mu == doctest::Approx(0.0));
        CHECK(s.sigma == doctest::Approx(std::exp(0.2)).epsilon(1e-12));
    }
    SUBCASE("overflow guard") {
        CHECK_THROWS_AS(flow_step({0, 0, -1}, {0.0, 1.0}, 1000.0), std::overflow_error);
    }
    SUBCASE("sigma stays positive") {
        Rng rng(7);
        for (int i = 0; i < 200; ++i) {
            QuadModel q{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
            GaussianState s{rng.uniform(-5, 5), rng.uniform(0.01, 3)};
            auto next = flow_step(q, s, rng.uniform(0.001, 1.0));
            CHECK(next.sigma > 0.0);
        }
    }
}

TEST_CASE("flow semigroup property") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        QuadModel q{0.0, rng.uniform(-2, 2), rng.uniform(-1.5, 1.5)};
        GaussianState s{rng.uniform(-3, 3), rng.uniform(0.05, 2)};
        double t1 = rng.uniform(0.01, 0.7), t2 = rng.uniform(0.01, 0.7);
        auto a = flow_step(q, flow_step(q, s, t1), t2);
        auto b = flow_step(q, s, t1 + t2);
        CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-12));
        CHECK(a.sigma == doctest::Approx(b.sigma).epsilon(1e-12));
    }
}

TEST_CASE("clamped flow") {
    SUBCASE("flat surrogate contracts sigma by vartheta") {
        auto s = flow_step_clamped({0, 0, 0}, {0.0, 1.0}, INFINITY, 1000.0, 0.95);
        CHECK(s.mu == doctest::Approx(0.0));
        CHECK(s.sigma == doctest::Approx(0.95));
    }
    SUBCASE("inactive below h_max") {
        auto a = flow_step_clamped({0, 0, 1}, {1.0, 1.0}, 0.5, 1000.0, 0.95);
        auto b = flow_step({0, 0, 1}, {1.0, 1.0}, 0.5);
        CHECK(a.mu == b.mu);
        CHECK(a.sigma == b.sigma);
    }
    SUBCASE("no contraction for negative curvature") {
        auto a = flow_step_clamped({0, 0, -1e-4}, {0.0, 1.0}, 2000.0, 1000.0, 0.95);
        auto b = flow_step({0, 0, -1e-4}, {0.0, 1.0}, 1000.0);
        CHECK(a.mu == b.mu);
        CHECK(a.sigma == b.sigma);
    }
    SUBCASE("clamp contracts sigma below vartheta for c >= 0") {
        auto s = flow_step_clamped({0, 0.3, 0.002}, {0.5, 1.0}, INFINITY, 100.0, 0.95);
        CHECK(s.sigma <= 0.95 * 1.0);
        CHECK(s.sigma > 0.0);
    }
}

TEST_CASE("relaxed F for polynomials via Gaussian moments") {
    SUBCASE("second moment") {
        std::array<double, 3> sq{0, 0, 1};
        CHECK(relaxed_F_polynomial(sq, {2.0, 3.0}) == doctest::Approx(4.0 + 9.0));
        CHECK(relaxed_F_polynomial(sq, {0.0, 1.0}) == doctest::Approx(1.0));
    }
    SUBCASE("normalization and mean") {
        std::array<double, 1> one{1};
        CHECK(relaxed_F_polynomial(one, {5.0, 0.1}) == doctest::Approx(1.0));
        std::array<double, 2> id{0, 1};
        CHECK(relaxed_F_polynomial(id, {3.0, 2.0}) == doctest::Approx(3.0));
    }
    SUBCASE("matches Simpson quadrature for a quartic") {
        std::array<double, 5> f{1.0, 3.0, 1.0, 0.0, 1.0}; // 1 + 3x + x^2 + x^4
        GaussianState s{0.4, 0.8};
        int n = 40001;
        double lo = s.mu - 12 * s.sigma, hi = s.mu + 12 * s.sigma;
        double h = (hi - lo) / (n - 1);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = lo + i * h;
            double fx = f[0] + x * (f[1] + x * (f[2] + x * (f[3] + x * f[4])));
            double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * fx * std::exp(log_gaussian_pdf(x, s));
        }
        acc *= h / 3.0;
        CHECK(relaxed_F_polynomial(f, s) == doctest::Approx(acc).epsilon(1e-10));
    }
}

TEST_CASE("polynomial gradient matches finite differences of F") {
    std::array<double, 5> f{1.0, 3.0, 1.0, 0.0, 1.0};
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        GaussianState s{rng.uniform(-2, 2), rng.uniform(0.2, 2)};
        auto g = grad_F_polynomial(f, s);
        double h = 1e-6;
        double dmu = (relaxed_F_polynomial(f, {s.mu + h, s.sigma}) -
                      relaxed_F_polynomial(f, {s.mu - h, s.sigma})) /
                     (2 * h);
        double dsg = (relaxed_F_polynomial(f, {s.mu, s.sigma + h}) -
                      relaxed_F_polynomial(f, {s.mu, s.sigma - h})) /
                     (2 * h);
        CHECK(g.d_mu == doctest::Approx(dmu).epsilon(1e-6));
        CHECK(g.d_sigma == doctest::Approx(dsg).epsilon(1e-6));
    }
}

TEST_CASE("F satisfies the sigma heat equation") {
    std::array<double, 5> f{1.0, 3.0, 1.0, 0.0, 1.0}; // x^4 + x^2 + 3x + 1
    double h = 1e-4;
    for (double mu : {-1.5, -0.3, 0.0, 0.7, 1.8}) {
        for (double sigma : {0.3, 0.8, 1.4}) {
            double dF_dsigma = (relaxed_F_polynomial(f, {mu, sigma + h}) -
                                relaxed_F_polynomial(f, {mu, sigma - h})) /
                               (2 * h);
            double d2F_dmu2 = (relaxed_F_polynomial(f, {mu + h, sigma}) -
                               2 * relaxed_F_polynomial(f, {mu, sigma}) +
                               relaxed_F_polynomial(f, {mu - h, sigma})) /
                              (h * h);
            CHECK(dF_dsigma ==
                  doctest::Approx(sigma * d2F_dmu2).epsilon(1e-5));
        }
    }
}

TEST_CASE("convexity in mu is preserved for x^4 + x^2") {
    std::array<double, 5> f{0.0, 0.0, 1.0, 0.0, 1.0};
    double h = 1e-4;
    for (double mu = -2.0; mu <= 2.0; mu += 0.25) {
        for (double sigma = 0.25; sigma <= 2.0; sigma += 0.25) {
            double d2 = (relaxed_F_polynomial(f, {mu + h, sigma}) -
                         2 * relaxed_F_polynomial(f, {mu, sigma}) +
                         relaxed_F_polynomial(f, {mu - h, sigma})) /
                        (h * h);
            CHECK(d2 > 0.0);
        }
    }
}

TEST_CASE("F decreases along the quadratic flow") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        QuadModel q{rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(0.1, 2)};
        GaussianState s{rng.uniform(-2, 2), rng.uniform(0.1, 2)};
        double t = rng.uniform(0.01, 1.0);
        std::array<double, 3> coeffs{q.a, q.b, q.c};
        double before = relaxed_F_polynomial(coeffs, s);
        double after = relaxed_F_polynomial(coeffs, flow_step(q, s, t));
        bool at_rest = std::abs(q.b + 2 * q.c * s.mu) < 1e-14 && std::abs(q.c * s.sigma) < 1e-14;
        if (!at_rest) CHECK(after < before);
    }
}
