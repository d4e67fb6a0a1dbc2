#include "charflow/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace charflow::cauchy {

using expr::Bindings;

double InitialData::tau_at(double x) const { return expr::eval(tau, Bindings{{"x", x}}); }

double InitialData::tau_prime_at(double x) const {
    return expr::eval_dual(tau, Bindings{{"x", x}}, "x").der;
}

double InitialData::nu_at(double x) const { return expr::eval(nu, Bindings{{"x", x}}); }

ImplicitSolution::ImplicitSolution(InitialData data, num::Tolerance tol, int cache_nodes)
    : data_(std::move(data)), tol_(tol) {
    tol_.validate();
    if (!(data_.a < data_.b)) raise(errc::bad_parameter, "initial data: need a < b");
    if (cache_nodes < 8) raise(errc::bad_parameter, "solution cache: need >= 8 nodes");

    // Theorem 1 precondition: tau' does not vanish on the support.
    const int n_check = std::max(2, data_.check_samples);
    for (int i = 0; i < n_check; ++i) {
        const double x = data_.a + (data_.b - data_.a) * i / (n_check - 1);
        const double tp = data_.tau_prime_at(x);
        if (std::abs(tp) <= data_.degeneracy_threshold) {
            raise(errc::degeneration_on_support,
                  "tau' vanishes near x = " + std::to_string(x) +
                      " (parabolic degeneration on the data support)");
        }
    }

    const double tau_a = data_.tau_at(data_.a);
    const double tau_b = data_.tau_at(data_.b);
    orientation_ = tau_b > tau_a ? 1 : -1;
    tau_range_ = {std::min(tau_a, tau_b), std::max(tau_a, tau_b)};

    // Inverse of tau, with tolerance tightened below the caller's.
    num::Tolerance inv_tol = tol_;
    inv_tol.abs_tol *= 0.1;
    inv_tol.rel_tol *= 0.1;
    inverse_ = std::make_shared<num::MonotoneInverse>(
        [this](double x) { return data_.tau_at(x); }, num::Bracket{data_.a, data_.b}, inv_tol);

    // Cumulative integrals of F1 and G1 cached on a Chebyshev grid; tracing
    // and residual evaluation hit the same integrals over and over.
    const auto nodes = interp::ChebyshevTable::nodes(data_.a, data_.b, cache_nodes);
    num::Tolerance cache_tol = tol_;
    cache_tol.abs_tol *= 0.1;
    cache_tol.rel_tol *= 0.1;
    std::vector<double> vf(nodes.size()), vg(nodes.size());
    vf[0] = vg[0] = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        vf[i] = vf[i - 1] + num::integrate([this](double t) { return f1(t); }, nodes[i - 1],
                                           nodes[i], cache_tol);
        vg[i] = vg[i - 1] + num::integrate([this](double t) { return g1(t); }, nodes[i - 1],
                                           nodes[i], cache_tol);
    }
    int_f1_ = std::make_shared<interp::ChebyshevTable>(data_.a, data_.b, std::move(vf));
    int_g1_ = std::make_shared<interp::ChebyshevTable>(data_.a, data_.b, std::move(vg));
}

double ImplicitSolution::f1(double t) const { return 0.5 * (1.0 - data_.nu_at(t)); }
double ImplicitSolution::g1(double t) const { return 0.5 * (1.0 + data_.nu_at(t)); }

double ImplicitSolution::clamp_to_range(double z) const {
    const double span = tau_range_.width();
    const double slack = tol_.abs_tol + 1e-12 * span;
    if (z < tau_range_.lo || z > tau_range_.hi) {
        if (z >= tau_range_.lo - slack && z <= tau_range_.hi + slack)
            return std::clamp(z, tau_range_.lo, tau_range_.hi);
        raise(errc::out_of_range, "value " + std::to_string(z) + " outside the data range [" +
                                      std::to_string(tau_range_.lo) + ", " +
                                      std::to_string(tau_range_.hi) + "]");
    }
    return z;
}

double ImplicitSolution::inverse_tau(double z) const { return (*inverse_)(clamp_to_range(z)); }

double ImplicitSolution::int_f1(double s) const { return (*int_f1_)(s); }
double ImplicitSolution::int_g1(double s) const { return (*int_g1_)(s); }

double ImplicitSolution::residual(double u, double x, double y) const {
    const double s_plus = inverse_tau(u + y);
    const double s_minus = inverse_tau(u - y);
    return data_.a + int_f1(s_plus) + int_g1(s_minus) - x;
}

std::optional<num::Bracket> ImplicitSolution::admissible_u(double y) const {
    const double lo = tau_range_.lo + std::abs(y);
    const double hi = tau_range_.hi - std::abs(y);
    if (!(lo < hi)) return std::nullopt;
    return num::Bracket{lo, hi};
}

double ImplicitSolution::solve_u(double x, double y, const num::Tolerance& tol,
                                 int scan_points) const {
    const auto interval = admissible_u(y);
    if (!interval)
        raise(errc::outside_domain,
              "solve_u: 2|y| exceeds the data range span; no admissible u at y = " +
                  std::to_string(y));
    if (scan_points < 2) raise(errc::bad_parameter, "solve_u: scan_points must be >= 2");

    // Scan for sign changes of the residual over the admissible interval.
    // Several roots near the envelope are reported, never silently resolved.
    std::vector<double> values(scan_points + 1);
    std::vector<double> us(scan_points + 1);
    for (int i = 0; i <= scan_points; ++i) {
        us[i] = interval->lo + interval->width() * i / scan_points;
        values[i] = residual(us[i], x, y);
    }

    std::vector<num::Bracket> brackets;
    std::vector<double> exact_hits;
    for (int i = 0; i < scan_points; ++i) {
        if (values[i] == 0.0) exact_hits.push_back(us[i]);
        else if (std::signbit(values[i]) != std::signbit(values[i + 1]) && values[i + 1] != 0.0)
            brackets.push_back({us[i], us[i + 1]});
    }
    if (values[scan_points] == 0.0) exact_hits.push_back(us[scan_points]);

    const std::size_t n_roots = brackets.size() + exact_hits.size();
    if (n_roots == 0)
        raise(errc::outside_domain, "solve_u: no residual root in the admissible interval at (" +
                                        std::to_string(x) + ", " + std::to_string(y) + ")");
    if (n_roots > 1) {
        std::string msg = "solve_u: multiple residual roots at (" + std::to_string(x) + ", " +
                          std::to_string(y) + "); candidates near";
        for (const double u : exact_hits) msg += " " + std::to_string(u);
        for (const auto& b : brackets) msg += " " + std::to_string(0.5 * (b.lo + b.hi));
        raise(errc::ambiguous_root, msg);
    }
    if (!exact_hits.empty()) return exact_hits.front();
    return num::find_root([&](double u) { return residual(u, x, y); }, brackets.front(), tol);
}

double ImplicitSolution::trace_x(Family fam, double c, double y) const {
    if (fam == Family::first) {
        const double s = inverse_tau(data_.tau_at(c) - 2.0 * y);
        return data_.a + int_f1(c) + int_g1(s);
    }
    const double s = inverse_tau(data_.tau_at(c) + 2.0 * y);
    return data_.a + int_f1(s) + int_g1(c);
}

double ImplicitSolution::trace_dx_dy(Family fam, double c, double y) const {
    // d/dy of the moving integral bound; T'(z) = 1/tau'(T(z)).
    if (fam == Family::first) {
        const double s = inverse_tau(data_.tau_at(c) - 2.0 * y);
        return -2.0 * g1(s) / data_.tau_prime_at(s);
    }
    const double s = inverse_tau(data_.tau_at(c) + 2.0 * y);
    return 2.0 * f1(s) / data_.tau_prime_at(s);
}

double ImplicitSolution::trace_dx_dc(Family fam, double c, double y) const {
    const double tau_prime_c = data_.tau_prime_at(c);
    if (fam == Family::first) {
        const double s = inverse_tau(data_.tau_at(c) - 2.0 * y);
        return f1(c) + g1(s) * tau_prime_c / data_.tau_prime_at(s);
    }
    const double s = inverse_tau(data_.tau_at(c) + 2.0 * y);
    return g1(c) + f1(s) * tau_prime_c / data_.tau_prime_at(s);
}

namespace {

CharacteristicCurve trace(const ImplicitSolution& sol, Family fam, double c,
                          const std::vector<double>& y_samples) {
    const auto& data = sol.data();
    if (c < data.a || c > data.b)
        raise(errc::out_of_range, "trace: c = " + std::to_string(c) + " outside the support [" +
                                      std::to_string(data.a) + ", " + std::to_string(data.b) + "]");
    CharacteristicCurve curve;
    curve.family = fam;
    curve.c = c;
    const double tau_c = data.tau_at(c);
    const double shift = fam == Family::first ? -2.0 : 2.0;
    for (const double y : y_samples) {
        const double z = tau_c + shift * y;
        if (z < sol.tau_range().lo - 1e-12 || z > sol.tau_range().hi + 1e-12) {
            curve.dropped.push_back(y);
            continue;
        }
        curve.points.push_back({sol.trace_x(fam, c, y), y});
        curve.u_values.push_back(fam == Family::first ? tau_c - y : tau_c + y);
    }
    return curve;
}

}  // namespace

CharacteristicCurve ImplicitSolution::trace_first(double c,
                                                  const std::vector<double>& y_samples) const {
    return trace(*this, Family::first, c, y_samples);
}

CharacteristicCurve ImplicitSolution::trace_second(double c,
                                                   const std::vector<double>& y_samples) const {
    return trace(*this, Family::second, c, y_samples);
}

ImplicitSolution build_solution(InitialData data, num::Tolerance tol) {
    return ImplicitSolution(std::move(data), tol);
}

std::pair<Vec2, Vec2> support_slopes(const InitialData& data, double x0) {
    if (x0 < data.a || x0 > data.b)
        raise(errc::out_of_range, "support_slopes: x0 outside the support");
    const double tau_prime = data.tau_prime_at(x0);
    const double nu = data.nu_at(x0);
    const Direction first = Direction(nu + 1.0, -tau_prime).normalized();
    const Direction second = Direction(nu - 1.0, -tau_prime).normalized();
    return {Vec2{first.dx, first.dy}, Vec2{second.dx, second.dy}};
}

}  // namespace charflow::cauchy
