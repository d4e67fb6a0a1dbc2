#include "charflow/inverse.hpp"

#include <algorithm>
#include <cmath>

#include "charflow/interp.hpp"

namespace charflow::inverse {

std::pair<double, double> derivatives_from_directions(const Direction& m1, const Direction& m2) {
    const Direction n1 = m1.normalized();
    const Direction n2 = m2.normalized();
    const double den = cross(n1, n2);
    if (std::abs(den) <= 1e-12)
        raise(errc::parallel_directions,
              "coincident characteristic directions (parabolic degeneration on the support)");
    const double u_x = -2.0 * n1.dy * n2.dy / den;
    const double u_y = (n1.dx * n2.dy + n2.dx * n1.dy) / den;
    return {u_x, u_y};
}

std::pair<double, double> recover_pointwise(const Direction& m1, const Direction& m2) {
    return derivatives_from_directions(m1, m2);
}

namespace {

void check_tags(const CharacteristicFamily& fam1, const CharacteristicFamily& fam2) {
    if (fam1.tag() != InvariantTag::first || fam2.tag() != InvariantTag::second)
        raise(errc::tag_mismatch,
              "recovery: fam1 must carry the u+y invariant and fam2 the u-y invariant");
}

}  // namespace

RecoveredData recover_line(const CharacteristicFamily& fam1, const CharacteristicFamily& fam2,
                           const num::Bracket& interval, int n,
                           std::pair<double, double> norm, const LineRecoveryOptions& opt) {
    check_tags(fam1, fam2);
    interval.validate();
    if (n < 2) raise(errc::bad_parameter, "recover_line: need n >= 2 samples");
    const auto [norm_x, norm_u] = norm;
    if (norm_x < interval.lo || norm_x > interval.hi)
        raise(errc::bad_parameter, "recover_line: normalization point outside the interval");

    RecoveredData out;
    out.support = SupportPoint::Kind::line;
    out.norm_s = norm_x;
    out.norm_u = norm_u;

    std::vector<double> xs(n), tau_prime(n);
    for (int i = 0; i < n; ++i) {
        const double x = interval.lo + interval.width() * i / (n - 1);
        const SupportPoint p = SupportPoint::line(x);
        try {
            const Direction m1 = slope_at(fam1, p, opt.scan);
            const Direction m2 = slope_at(fam2, p, opt.scan);
            const auto [tp, nu] = recover_pointwise(m1, m2);
            RecoveredSample s;
            s.s = x;
            s.u_x = tp;
            s.u_y = nu;
            out.samples.push_back(s);
            xs[i] = x;
            tau_prime[i] = tp;
        } catch (error& e) {
            throw error(e.code(), std::string(e.what()) + " at x = " + std::to_string(x));
        }
    }

    const interp::CubicInterpolant tp_interp(std::move(xs), std::move(tau_prime));
    for (auto& s : out.samples) s.u = norm_u + tp_interp.integral(norm_x, s.s);
    return out;
}

RecoveredData recover_circle(const CharacteristicFamily& fam1,
                             const CharacteristicFamily& fam2,
                             const std::vector<double>& theta_grid,
                             std::pair<double, double> norm, const CircleRecoveryOptions& opt) {
    check_tags(fam1, fam2);
    if (fam1.form() != FamilyForm::polar_implicit || fam2.form() != FamilyForm::polar_implicit)
        raise(errc::bad_parameter, "recover_circle: families must be in polar form");
    if (theta_grid.size() < 2)
        raise(errc::bad_parameter, "recover_circle: need >= 2 theta samples");
    const auto [norm_theta, norm_u] = norm;

    RecoveredData out;
    out.support = SupportPoint::Kind::circle;
    out.norm_s = norm_theta;
    out.norm_u = norm_u;

    std::vector<double> thetas, u_thetas;
    thetas.reserve(theta_grid.size());
    for (const double theta : theta_grid) {
        // the family node at theta = 2 pi k carries no slope information
        const double wrapped = theta - 2.0 * M_PI * std::floor(theta / (2.0 * M_PI));
        if (wrapped < opt.node_exclusion || wrapped > 2.0 * M_PI - opt.node_exclusion)
            raise(errc::singular_point,
                  "recover_circle: theta = " + std::to_string(theta) +
                      " inside the node exclusion band");
        if (!thetas.empty() && theta <= thetas.back())
            raise(errc::bad_parameter, "recover_circle: theta grid must be increasing");

        const SupportPoint p = SupportPoint::circle(theta);
        const Direction m1 = slope_at(fam1, p, opt.scan);
        const Direction m2 = slope_at(fam2, p, opt.scan);
        const auto [u_x, u_y] = derivatives_from_directions(m1, m2);

        RecoveredSample s;
        s.s = theta;
        s.u_x = u_x;
        s.u_y = u_y;
        s.u_theta = -u_x * std::sin(theta) + u_y * std::cos(theta);
        s.u_r = u_x * std::cos(theta) + u_y * std::sin(theta);
        out.samples.push_back(s);
        thetas.push_back(theta);
        u_thetas.push_back(s.u_theta);
    }

    if (norm_theta < thetas.front() || norm_theta > thetas.back())
        raise(errc::bad_parameter, "recover_circle: normalization angle outside the grid");
    const interp::CubicInterpolant ut_interp(std::move(thetas), std::move(u_thetas));
    for (auto& s : out.samples) s.u = norm_u + ut_interp.integral(norm_theta, s.s);
    return out;
}

}  // namespace charflow::inverse
