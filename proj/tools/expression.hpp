#ifndef RELAXOPT_TOOLS_EXPRESSION_HPP
#define RELAXOPT_TOOLS_EXPRESSION_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace relaxopt::tools {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Compiles a one-variable arithmetic expression ("x^2 - cos(10*x)") into a
// callable. Supports + - * / ^, parentheses, the constants pi and e, and
// sin cos tan exp log log10 sqrt cbrt abs floor ceil sign.
std::function<double(double)> parse_expression(const std::string& text);

// Objective description file: key = value lines with keys xmin, xmax, f.
struct ParsedObjective {
    std::function<double(double)> f;
    double x_min;
    double x_max;
    std::string expression_text;
};

ParsedObjective load_objective_file(const std::string& path);

} // namespace relaxopt::tools

#endif
