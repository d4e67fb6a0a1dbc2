#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "charflow/cauchy.hpp"
#include "charflow/family.hpp"

namespace charflow::corpus {

// Closed-form reference functions carried by a bundle; only the members
// meaningful for the example are set.
struct Oracles {
    // exponential example (tau = x, nu = 1 - e^x)
    std::function<double(double u, double x, double y)> implicit_residual;
    std::function<double(double x, double y)> envelope_residual;
    std::function<double(double y, double c)> first_trace_x;
    std::function<double(double y, double c)> second_trace_x;
    std::function<double(double u, double y)> fold_residual;  // d residual / d u

    // line-support recovery targets (functions of x, tau anchored at (0,0))
    std::function<double(double)> tau_prime;
    std::function<double(double)> nu;
    std::function<double(double)> tau;

    // translate / circle examples
    double alpha = 0.0;
    std::vector<double> degeneration_lines;

    // circle-support recovery targets (functions of theta; u anchored so the
    // integration constant vanishes, i.e. u(pi/2) = 0)
    std::function<double(double)> u_x;
    std::function<double(double)> u_y;
    std::function<double(double)> u_theta;
    std::function<double(double)> u_r;
    std::function<double(double)> u;
    std::function<bool(double x, double y)> gap_contains;
};

struct ExampleBundle {
    std::string id;
    double a = 0.0, b = 0.0;  // example2/example3 parameters
    std::optional<cauchy::InitialData> initial_data;
    inverse::CharacteristicFamily fam1;  // u+y invariant
    inverse::CharacteristicFamily fam2;  // u-y invariant
    Oracles oracles;

    // sensible CLI defaults
    num::Bracket support{-1.0, 1.0};
    int coverage_subdivisions = 256;
};

// id: "example1" | "example2" | "example3". a, b are ignored by example1 and
// must satisfy a > b > 0 for the others.
ExampleBundle get_example(const std::string& id, double a = 2.0, double b = 1.0);

}  // namespace charflow::corpus
