#include "charflow/corpus.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace charflow::corpus {

using inverse::CharacteristicFamily;
using inverse::FamilyForm;
using inverse::InvariantTag;

namespace {

ExampleBundle make_example1() {
    ExampleBundle bundle;
    bundle.id = "example1";
    bundle.support = {-1.0, 1.0};

    cauchy::InitialData data;
    data.a = -1.0;
    data.b = 1.0;
    data.tau = expr::parse("x");
    data.nu = expr::parse("1 - exp(x)");
    bundle.initial_data = data;

    bundle.fam1 = CharacteristicFamily::from_expression(
        FamilyForm::x_of_y, expr::parse("1/2*exp(c) - 1/2*exp(c - 2*y) + c - 2*y"),
        InvariantTag::first, bundle.support);
    bundle.fam2 = CharacteristicFamily::from_expression(
        FamilyForm::x_of_y, expr::parse("-1/2*exp(c) + 1/2*exp(c + 2*y) + c"),
        InvariantTag::second, bundle.support);
    // x(0; c) = c for both families
    bundle.fam1.set_support_resolver([](double s) { return s; });
    bundle.fam2.set_support_resolver([](double s) { return s; });

    auto& o = bundle.oracles;
    o.implicit_residual = [](double u, double x, double y) {
        return 0.5 * std::exp(u + y) + u - y - 0.5 * std::exp(u - y) - x;
    };
    o.envelope_residual = [](double x, double y) {
        return std::exp(1.0 + x) * (1.0 - std::exp(2.0 * y)) - 2.0;
    };
    o.first_trace_x = [](double y, double c) {
        return 0.5 * std::exp(c) + c - 2.0 * y - 0.5 * std::exp(c - 2.0 * y);
    };
    o.second_trace_x = [](double y, double c) {
        return 0.5 * std::exp(c + 2.0 * y) + c - 0.5 * std::exp(c);
    };
    o.fold_residual = [](double u, double y) { return std::exp(u) * std::sinh(y) + 1.0; };
    o.tau_prime = [](double) { return 1.0; };
    o.nu = [](double x) { return 1.0 - std::exp(x); };
    o.tau = [](double x) { return x; };
    return bundle;
}

void require_params(const std::string& id, double a, double b) {
    if (!(a > b && b > 0.0))
        raise(errc::bad_parameter, id + ": parameters must satisfy a > b > 0 (got a = " +
                                       std::to_string(a) + ", b = " + std::to_string(b) + ")");
}

ExampleBundle make_example2(double a, double b) {
    require_params("example2", a, b);
    ExampleBundle bundle;
    bundle.id = "example2";
    bundle.a = a;
    bundle.b = b;
    bundle.support = {-1.0, 1.0};

    expr::Bindings params{{"a", a}, {"b", b}};
    const num::Bracket c_range{-30.0, 30.0};
    const expr::Expression phi1 = expr::parse("c - a*sqrt(a/(y + b) - 1)");
    const expr::Expression phi2 = expr::parse("c + a*sqrt(a/(y + b) - 1)");
    bundle.fam1 = CharacteristicFamily::from_expression(FamilyForm::x_of_y, phi1,
                                                        InvariantTag::first, c_range, params);
    bundle.fam2 = CharacteristicFamily::from_expression(FamilyForm::x_of_y, phi2,
                                                        InvariantTag::second, c_range, params);
    const double offset = a * std::sqrt((a - b) / b);
    bundle.fam1.set_support_resolver([offset](double s) { return s + offset; });
    bundle.fam2.set_support_resolver([offset](double s) { return s - offset; });

    // c enters both families additively, so the point-local residual is
    // c + phi(y, 0) - x; binding phi(y, 0) once keeps grid scans cheap.
    auto translate_curry = [a, b](expr::Expression phi) {
        return [phi, a, b](double x, double y) {
            double base = std::numeric_limits<double>::quiet_NaN();
            try {
                base = expr::eval(
                    phi, expr::Bindings{{"a", a}, {"b", b}, {"y", y}, {"c", 0.0}});
            } catch (const error&) {
            }
            return std::function<double(double)>(
                [base, x](double c) { return c + base - x; });
        };
    };
    bundle.fam1.set_plane_curry(translate_curry(phi1));
    bundle.fam2.set_plane_curry(translate_curry(phi2));

    auto& o = bundle.oracles;
    o.alpha = (2.0 * b * b / (a * a)) * std::sqrt((a - b) / b);
    const double alpha = o.alpha;
    o.tau_prime = [alpha](double) { return -alpha; };
    o.nu = [](double) { return 0.0; };
    o.tau = [alpha](double x) { return -alpha * x; };
    o.degeneration_lines = {a - b, -b};
    return bundle;
}

ExampleBundle make_example3(double a, double b) {
    require_params("example3", a, b);
    ExampleBundle bundle;
    bundle.id = "example3";
    bundle.a = a;
    bundle.b = b;
    bundle.coverage_subdivisions = 1024;

    // Closed family of contours in polar form; the parameter c is the free
    // constant added to the angular term.
    const expr::Expression contour = expr::parse(
        "2*b*(1 - r*cos(theta)) / (r^2 - 2*r*cos(theta) + 1)"
        " - a^3 / (a^2 + (2*b*r*sin(theta) / (r^2 - 2*r*cos(theta) + 1) + c)^2)");
    expr::Bindings params{{"a", a}, {"b", b}};
    const num::Bracket c_range{-80.0, 80.0};
    bundle.fam1 = CharacteristicFamily::from_expression(FamilyForm::polar_implicit, contour,
                                                        InvariantTag::first, c_range, params);
    bundle.fam2 = CharacteristicFamily::from_expression(FamilyForm::polar_implicit, contour,
                                                        InvariantTag::second, c_range, params);

    // Curve through the circle point (1, s): c = -b cot(s/2) +/- a sqrt((a-b)/b),
    // the sign picking the branch that carries the family's invariant.
    const double branch = a * std::sqrt((a - b) / b);
    bundle.fam1.set_support_resolver([b, branch](double s) {
        return -b * std::sin(s) / (1.0 - std::cos(s)) + branch;
    });
    bundle.fam2.set_support_resolver([b, branch](double s) {
        return -b * std::sin(s) / (1.0 - std::cos(s)) - branch;
    });

    // The point-local residual is a rational function of c once the point
    // terms are fixed; binding them keeps dense coverage scans cheap.
    auto curry = [a, b](double x, double y) {
        const double q = (x - 1.0) * (x - 1.0) + y * y;
        if (q == 0.0) {
            return std::function<double(double)>(
                [](double) { return std::numeric_limits<double>::quiet_NaN(); });
        }
        const double p = 2.0 * b * (1.0 - x) / q;
        const double s = 2.0 * b * y / q;
        const double a2 = a * a, a3 = a * a * a;
        return std::function<double(double)>(
            [p, s, a2, a3](double c) { return p - a3 / (a2 + (s + c) * (s + c)); });
    };
    bundle.fam1.set_plane_curry(curry);
    bundle.fam2.set_plane_curry(curry);

    auto& o = bundle.oracles;
    o.alpha = (2.0 * b * b / (a * a)) * std::sqrt((a - b) / b);
    const double alpha = o.alpha;
    o.u_x = [alpha](double th) {
        const double c = std::cos(th), s = std::sin(th);
        return (c * c - alpha * alpha * s * s) / alpha;
    };
    o.u_y = [alpha](double th) {
        return (alpha * alpha + 1.0) / alpha * std::cos(th) * std::sin(th);
    };
    o.u_theta = [alpha](double th) { return alpha * std::sin(th); };
    o.u_r = [alpha](double th) { return std::cos(th) / alpha; };
    o.u = [alpha](double th) { return -alpha * std::cos(th); };
    o.gap_contains = [a, b](double x, double y) {
        const double lhs = ((x - 1.0) * a + b) * ((x - 1.0) * a + b) + y * y * a * a;
        return lhs < b * b;
    };
    return bundle;
}

}  // namespace

ExampleBundle get_example(const std::string& id, double a, double b) {
    if (id == "example1") return make_example1();
    if (id == "example2") return make_example2(a, b);
    if (id == "example3") return make_example3(a, b);
    raise(errc::not_found, "unknown example preset '" + id + "'");
}

}  // namespace charflow::corpus
