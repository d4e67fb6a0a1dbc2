#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charflow/types.hpp"

namespace charflow::cli {

// Resolved run configuration. Populated either from command-line flags or
// from a JSON config document (flags win over the document).
struct RunConfig {
    std::string mode;

    std::optional<std::string> example;
    double a = 2.0;
    double b = 1.0;

    std::optional<std::string> tau;
    std::optional<std::string> nu;
    std::optional<std::string> phi1;
    std::optional<std::string> phi2;
    std::string form = "x_of_y";  // y_of_x | x_of_y | polar

    std::optional<std::pair<double, double>> support;
    std::optional<std::pair<double, double>> at;
    std::vector<double> c_values;
    std::optional<std::pair<double, double>> c_range;
    std::optional<BBox> bbox;
    int grid_nx = 100;
    int grid_ny = 100;
    int samples = 41;
    std::optional<int> scan;  // c-scan subdivisions
    std::optional<std::pair<double, double>> norm;
    double tol = 1e-10;

    std::optional<std::string> output;    // -o
    std::optional<std::string> svg_path;  // --svg
    bool json_errors = false;
};

RunConfig config_from_json_file(const std::string& path);

// Executes one mode. Returns the process exit status: 0 success, 1 for
// configuration/parse problems, 2 for mathematical domain errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point (argument parsing + run).
int main_entry(int argc, char** argv);

}  // namespace charflow::cli
