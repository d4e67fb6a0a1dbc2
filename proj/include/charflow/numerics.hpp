#pragma once

#include <functional>

#include "charflow/errors.hpp"

namespace charflow::num {

using RealFn = std::function<double(double)>;

struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;

    void validate() const;
};

// An interval with lo < hi.
struct Bracket {
    double lo;
    double hi;

    void validate() const;
    double width() const { return hi - lo; }
};

// Oriented definite integral of f over [lo, hi] by adaptive bisection with a
// nested Gauss-Kronrod 7/15 rule per panel. lo > hi integrates backwards and
// returns the sign-flipped forward estimate.
double integrate(const RealFn& f, double lo, double hi, const Tolerance& tol = {});

// Root of f in the bracket. Requires a sign change (f(lo)*f(hi) <= 0);
// secant steps accelerated inside a shrinking bisection bracket, so the
// result never leaves [b.lo, b.hi].
double find_root(const RealFn& f, const Bracket& b, const Tolerance& tol = {});

// Inverse of a strictly monotone g over `domain`. Monotonicity is checked by
// sampling (`samples` points); each evaluation solves g(x) = z by find_root.
class MonotoneInverse {
public:
    MonotoneInverse(RealFn g, Bracket domain, Tolerance tol = {}, int samples = 64);

    double operator()(double z) const;

    bool increasing() const { return increasing_; }
    double range_min() const { return range_min_; }
    double range_max() const { return range_max_; }
    const Bracket& domain() const { return domain_; }

private:
    RealFn g_;
    Bracket domain_;
    Tolerance tol_;
    bool increasing_;
    double range_min_, range_max_;
    double range_slack_;
};

inline MonotoneInverse invert_monotone(RealFn g, Bracket domain, Tolerance tol = {},
                                       int samples = 64) {
    return MonotoneInverse(std::move(g), domain, tol, samples);
}

}  // namespace charflow::num
