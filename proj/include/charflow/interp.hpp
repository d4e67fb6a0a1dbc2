#pragma once

#include <functional>
#include <vector>

#include "charflow/errors.hpp"
#include "charflow/numerics.hpp"

namespace charflow::interp {

// Barycentric interpolation on Chebyshev points of the second kind over
// [lo, hi]. Geometric accuracy for analytic f; used to cache cumulative
// integrals that are evaluated repeatedly.
class ChebyshevTable {
public:
    // n_nodes >= 2. values[k] must correspond to node k (ascending order).
    ChebyshevTable(double lo, double hi, std::vector<double> values);

    static std::vector<double> nodes(double lo, double hi, int n_nodes);

    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
    std::vector<double> nodes_;
    std::vector<double> values_;
};

// C1 piecewise-cubic Hermite through (x_i, y_i) with finite-difference slopes
// (three-point one-sided at the ends). Exposes the antiderivative, so that
// cumulative integrals of sampled data keep O(h^4) accuracy.
class CubicInterpolant {
public:
    CubicInterpolant(std::vector<double> xs, std::vector<double> ys);

    double value(double x) const;
    // Integral of the interpolant from xa to xb (both inside the node range).
    double integral(double xa, double xb) const;

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }

private:
    double antiderivative(double x) const;  // with F(x_0) = 0
    std::size_t segment(double x) const;

    std::vector<double> xs_, ys_, slopes_;
    std::vector<double> cum_;  // antiderivative at nodes
};

}  // namespace charflow::interp
