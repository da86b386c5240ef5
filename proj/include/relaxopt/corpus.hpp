#ifndef RELAXOPT_CORPUS_HPP
#define RELAXOPT_CORPUS_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relaxopt/domain.hpp"

namespace relaxopt {

// One benchmark objective: expression, box domain, attribute tags, and the
// global minimum where a closed form exists. Entries without a closed-form
// argmin are validated against the grid oracle and recorded in the test
// fixtures instead of being hand-entered.
struct TestFunction {
    std::string name;
    std::function<double(double)> expression;
    Domain domain;
    std::vector<std::string> attributes;
    std::vector<double> known_min_x; // all global minimizers, may be empty
    std::optional<double> known_min_f;

    bool has_attribute(const std::string& attr) const;
};

// The 50-function benchmark corpus.
const std::vector<TestFunction>& load_corpus();

const TestFunction* find_function(const std::string& name);

// All attribute tags with their function counts.
std::vector<std::pair<std::string, int>> attribute_counts();

struct GroundTruth {
    std::vector<double> argmin; // representatives of every global-minimum cluster
    double min_value;
    double max_value;
};

// Dense-grid argmin refined by golden-section on each near-minimal cluster.
// Oracle for success checking and for validating known_min entries.
GroundTruth ground_truth(const TestFunction& fn, int grid_points = 200001);

// name | x_min | x_max | attributes | min_f | argmins, one line per function
void export_manifest(std::ostream& out);

} // namespace relaxopt

#endif
