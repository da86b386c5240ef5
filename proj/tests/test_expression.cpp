#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "../tools/expression.hpp"

using relaxopt::tools::load_objective_file;
using relaxopt::tools::parse_error;
using relaxopt::tools::parse_expression;

TEST_CASE("arithmetic and precedence") {
    CHECK(parse_expression("1 + 2 * 3")(0) == doctest::Approx(7.0));
    CHECK(parse_expression("(1 + 2) * 3")(0) == doctest::Approx(9.0));
    CHECK(parse_expression("2 ^ 3 ^ 2")(0) == doctest::Approx(512.0)); // right associative
    CHECK(parse_expression("-x^2")(3.0) == doctest::Approx(-9.0));
    CHECK(parse_expression("6 / 3 / 2")(0) == doctest::Approx(1.0));
    CHECK(parse_expression("x - -x")(2.5) == doctest::Approx(5.0));
}

TEST_CASE("functions and constants") {
    CHECK(parse_expression("sin(pi/2)")(0) == doctest::Approx(1.0));
    CHECK(parse_expression("log(e)")(0) == doctest::Approx(1.0));
    CHECK(parse_expression("x^2 - cos(10*x)")(0.5) ==
          doctest::Approx(0.25 - std::cos(5.0)));
    CHECK(parse_expression("floor(5*x^2)")(0.7) == doctest::Approx(2.0));
    CHECK(parse_expression("abs(0.5 - x)")(2.0) == doctest::Approx(1.5));
    CHECK(parse_expression("sqrt(abs(x))")(-4.0) == doctest::Approx(2.0));
    CHECK(parse_expression("sign(-3) + sign(0) + sign(2)")(0) == doctest::Approx(0.0));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_expression("1 +"), parse_error);
    CHECK_THROWS_AS(parse_expression("sin x"), parse_error);
    CHECK_THROWS_AS(parse_expression("(1 + 2"), parse_error);
    CHECK_THROWS_AS(parse_expression("y + 1"), parse_error);
    CHECK_THROWS_AS(parse_expression("1 2"), parse_error);
}

TEST_CASE("objective files") {
    const char* path = "expr_test_obj.txt";
    {
        std::ofstream out(path);
        out << "# comment\n"
            << "xmin = -3\n"
            << "xmax = 3\n"
            << "f = x^2 - cos(10*x)\n";
    }
    auto obj = load_objective_file(path);
    CHECK(obj.x_min == -3.0);
    CHECK(obj.x_max == 3.0);
    CHECK(obj.f(0.0) == doctest::Approx(-1.0));
    std::remove(path);

    {
        std::ofstream out(path);
        out << "xmin = 0\n"; // missing xmax and f
    }
    CHECK_THROWS_AS(load_objective_file(path), parse_error);
    std::remove(path);
    CHECK_THROWS_AS(load_objective_file("definitely_not_there.txt"), parse_error);
}
