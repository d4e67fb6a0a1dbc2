#include "charflow/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace charflow::num {

void Tolerance::validate() const {
    if (!(abs_tol > 0)) raise(errc::bad_parameter, "tolerance: abs_tol must be > 0");
    if (!(rel_tol >= 0)) raise(errc::bad_parameter, "tolerance: rel_tol must be >= 0");
    if (max_iter < 1) raise(errc::bad_parameter, "tolerance: max_iter must be >= 1");
}

void Bracket::validate() const {
    if (!(lo < hi)) raise(errc::bad_parameter, "bracket: lo must be < hi");
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const RealFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_mid = f(mid);
    double gauss = f_mid * kGaussWeights[3];
    double kronrod = f_mid * kKronrodWeights[7];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += fsum * kKronrodWeights[i];
        if (i % 2 == 1) gauss += fsum * kGaussWeights[i / 2];
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style sharpened estimate, never larger than the raw difference.
    const double diff = std::abs(kronrod - gauss);
    const double err = diff > 0 ? std::min(diff, std::pow(200.0 * diff, 1.5)) : 0.0;
    return {kronrod, err};
}

}  // namespace

double integrate(const RealFn& f, double lo, double hi, const Tolerance& tol) {
    tol.validate();
    if (lo == hi) return 0.0;
    if (lo > hi) return -integrate(f, hi, lo, tol);

    struct Panel {
        double a, b, value, error;
    };

    auto make_panel = [&](double a, double b) {
        const PanelResult r = gk15(f, a, b);
        return Panel{a, b, r.kronrod, r.error};
    };

    std::vector<Panel> panels{make_panel(lo, hi)};
    double total = panels.front().value;
    double total_err = panels.front().error;

    // the per-panel estimate can be optimistic near kinks; keep a margin
    auto target = [&] { return 0.25 * (tol.abs_tol + tol.rel_tol * std::abs(total)); };

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if (total_err <= target()) return total;

        // Split the panel with the largest error estimate.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;

        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) break;  // interval exhausted by rounding
        const Panel left = make_panel(p.a, mid);
        const Panel right = make_panel(mid, p.b);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        panels[worst] = left;
        panels.push_back(right);
    }

    if (total_err <= target()) return total;
    error e(errc::no_convergence, "integrate: panel subdivision did not converge");
    e.best_estimate = total;
    throw e;
}

double find_root(const RealFn& f, const Bracket& b, const Tolerance& tol) {
    tol.validate();
    b.validate();

    double lo = b.lo, hi = b.hi;
    double f_lo = f(lo), f_hi = f(hi);
    if (std::abs(f_lo) <= tol.abs_tol) return lo;
    if (std::abs(f_hi) <= tol.abs_tol) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        raise(errc::no_bracket, "find_root: no sign change over bracket");

    double x = hi, fx = f_hi;        // current iterate
    double x_prev = lo, fx_prev = f_lo;  // previous iterate for the secant step

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        const double width = hi - lo;
        if (std::abs(fx) <= tol.abs_tol || width <= tol.abs_tol + tol.rel_tol * std::abs(x))
            return x;

        // Secant candidate, bisection fallback when it leaves the bracket or
        // fails to reduce it meaningfully.
        double cand;
        const double dfx = fx - fx_prev;
        if (dfx != 0.0) {
            cand = x - fx * (x - x_prev) / dfx;
            const double margin = 0.01 * width;
            if (!(cand > lo + margin && cand < hi - margin)) cand = 0.5 * (lo + hi);
        } else {
            cand = 0.5 * (lo + hi);
        }

        const double f_cand = f(cand);
        x_prev = x;
        fx_prev = fx;
        x = cand;
        fx = f_cand;
        if (fx == 0.0) return x;
        if (std::signbit(f_cand) == std::signbit(f_lo)) {
            lo = cand;
            f_lo = f_cand;
        } else {
            hi = cand;
            f_hi = f_cand;
        }
    }

    double best = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
    if (std::abs(fx) < std::min(std::abs(f_lo), std::abs(f_hi))) best = x;
    error e(errc::no_convergence, "find_root: iteration limit reached");
    e.best_estimate = best;
    throw e;
}

MonotoneInverse::MonotoneInverse(RealFn g, Bracket domain, Tolerance tol, int samples)
    : g_(std::move(g)), domain_(domain), tol_(tol) {
    tol_.validate();
    domain_.validate();
    if (samples < 2) raise(errc::bad_parameter, "invert_monotone: need at least 2 samples");

    const double g_lo = g_(domain_.lo);
    const double g_hi = g_(domain_.hi);
    increasing_ = g_hi > g_lo;

    double prev = g_lo;
    for (int i = 1; i < samples; ++i) {
        const double x = domain_.lo + domain_.width() * i / (samples - 1);
        const double v = g_(x);
        const bool ok = increasing_ ? v > prev : v < prev;
        if (!ok)
            raise(errc::not_monotone,
                  "invert_monotone: sampled monotonicity violation near x = " + std::to_string(x));
        prev = v;
    }

    range_min_ = std::min(g_lo, g_hi);
    range_max_ = std::max(g_lo, g_hi);
    range_slack_ = tol_.abs_tol + tol_.rel_tol * (range_max_ - range_min_);
}

double MonotoneInverse::operator()(double z) const {
    if (z < range_min_ || z > range_max_) {
        if (z >= range_min_ - range_slack_ && z <= range_max_ + range_slack_) {
            z = std::clamp(z, range_min_, range_max_);
        } else {
            raise(errc::out_of_range,
                  "monotone inverse: z = " + std::to_string(z) + " outside range [" +
                      std::to_string(range_min_) + ", " + std::to_string(range_max_) + "]");
        }
    }
    if (z == range_min_) return increasing_ ? domain_.lo : domain_.hi;
    if (z == range_max_) return increasing_ ? domain_.hi : domain_.lo;
    return find_root([&](double x) { return g_(x) - z; }, domain_, tol_);
}

}  // namespace charflow::num
