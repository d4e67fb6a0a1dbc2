#include "charflow/interp.hpp"

#include <algorithm>
#include <cmath>

namespace charflow::interp {

ChebyshevTable::ChebyshevTable(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (!(lo < hi)) raise(errc::bad_parameter, "chebyshev table: lo must be < hi");
    if (values_.size() < 2) raise(errc::bad_parameter, "chebyshev table: need >= 2 nodes");
    nodes_ = nodes(lo, hi, static_cast<int>(values_.size()));
}

std::vector<double> ChebyshevTable::nodes(double lo, double hi, int n_nodes) {
    // Chebyshev points of the second kind, mapped to [lo, hi], ascending.
    std::vector<double> xs(n_nodes);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const int n = n_nodes - 1;
    for (int k = 0; k <= n; ++k)
        xs[k] = mid - half * std::cos(M_PI * k / n);
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

double ChebyshevTable::operator()(double x) const {
    // Barycentric weights for Chebyshev second-kind points: (-1)^k, halved at
    // the endpoints; the common scale factor cancels.
    const std::size_t n = nodes_.size();
    double num = 0.0, den = 0.0;
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = x - nodes_[k];
        if (dx == 0.0) return values_[k];
        double w = sign;
        if (k == 0 || k == n - 1) w *= 0.5;
        const double t = w / dx;
        num += t * values_[k];
        den += t;
        sign = -sign;
    }
    return num / den;
}

CubicInterpolant::CubicInterpolant(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n)
        raise(errc::bad_parameter, "cubic interpolant: need >= 2 matching nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(xs_[i] > xs_[i - 1]))
            raise(errc::bad_parameter, "cubic interpolant: nodes must be strictly increasing");

    slopes_.resize(n);
    if (n == 2) {
        slopes_[0] = slopes_[1] = (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = xs_[i] - xs_[i - 1];
            const double h1 = xs_[i + 1] - xs_[i];
            // three-point derivative on a possibly nonuniform grid
            slopes_[i] = (ys_[i + 1] * h0 * h0 - ys_[i - 1] * h1 * h1 +
                          ys_[i] * (h1 * h1 - h0 * h0)) /
                         (h0 * h1 * (h0 + h1));
        }
        auto one_sided = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
            const double h0 = xs_[i1] - xs_[i0];
            const double h1 = xs_[i2] - xs_[i1];
            // derivative at x_{i0} of the quadratic through the three points
            return (ys_[i1] - ys_[i0]) / h0 * (2.0 * h0 + h1) / (h0 + h1) -
                   (ys_[i2] - ys_[i1]) / h1 * h0 / (h0 + h1);
        };
        slopes_[0] = one_sided(0, 1, 2);
        // mirrored for the right end
        {
            const double h1 = xs_[n - 1] - xs_[n - 2];
            const double h0 = xs_[n - 2] - xs_[n - 3];
            slopes_[n - 1] = (ys_[n - 1] - ys_[n - 2]) / h1 * (2.0 * h1 + h0) / (h0 + h1) -
                             (ys_[n - 2] - ys_[n - 3]) / h0 * h1 / (h0 + h1);
        }
    }

    // Exact integral of each Hermite segment:
    //   int_0^h p = h/2 (y0 + y1) + h^2/12 (m0 - m1)
    cum_.resize(n);
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = xs_[i] - xs_[i - 1];
        cum_[i] = cum_[i - 1] + 0.5 * h * (ys_[i - 1] + ys_[i]) +
                  h * h / 12.0 * (slopes_[i - 1] - slopes_[i]);
    }
}

std::size_t CubicInterpolant::segment(double x) const {
    if (x < xs_.front() || x > xs_.back())
        raise(errc::out_of_range, "cubic interpolant: x = " + std::to_string(x) +
                                      " outside [" + std::to_string(xs_.front()) + ", " +
                                      std::to_string(xs_.back()) + "]");
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return 0;
    if (i >= xs_.size()) return xs_.size() - 2;
    return i - 1;
}

double CubicInterpolant::value(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double CubicInterpolant::antiderivative(double x) const {
    const std::size_t i = segment(x);
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    // integrals of the Hermite basis over [0, t]
    const double H00 = 0.5 * t4 - t3 + t;
    const double H10 = 0.25 * t4 - (2.0 / 3.0) * t3 + 0.5 * t2;
    const double H01 = -0.5 * t4 + t3;
    const double H11 = 0.25 * t4 - t3 / 3.0;
    return cum_[i] + h * (H00 * ys_[i] + H10 * h * slopes_[i] + H01 * ys_[i + 1] +
                          H11 * h * slopes_[i + 1]);
}

double CubicInterpolant::integral(double xa, double xb) const {
    return antiderivative(xb) - antiderivative(xa);
}

}  // namespace charflow::interp
