#include "charflow/family.hpp"

#include <algorithm>
#include <cmath>

namespace charflow::inverse {

using expr::Bindings;
using expr::Expression;

CharacteristicFamily CharacteristicFamily::from_expression(FamilyForm form, Expression phi,
                                                           InvariantTag tag,
                                                           num::Bracket c_range,
                                                           Bindings params) {
    c_range.validate();
    CharacteristicFamily fam;
    fam.form_ = form;
    fam.tag_ = tag;
    fam.c_range_ = c_range;
    fam.source_expr_ = phi;

    if (form == FamilyForm::polar_implicit) {
        auto bind = [params](double r, double th, double c) {
            Bindings b = params;
            b.set("r", r);
            b.set("theta", th);
            b.set("c", c);
            return b;
        };
        fam.polar_fn_.value = [phi, bind](double r, double th, double c) {
            return expr::eval(phi, bind(r, th, c));
        };
        fam.polar_fn_.d_r = [phi, bind](double r, double th, double c) {
            return expr::eval_dual(phi, bind(r, th, c), "r").der;
        };
        fam.polar_fn_.d_theta = [phi, bind](double r, double th, double c) {
            return expr::eval_dual(phi, bind(r, th, c), "theta").der;
        };
        fam.polar_fn_.d_c = [phi, bind](double r, double th, double c) {
            return expr::eval_dual(phi, bind(r, th, c), "c").der;
        };
        return fam;
    }

    const std::string var = form == FamilyForm::y_of_x ? "x" : "y";
    auto bind = [params, var](double v, double c) {
        Bindings b = params;
        b.set(var, v);
        b.set("c", c);
        return b;
    };
    fam.explicit_fn_.value = [phi, bind](double v, double c) {
        return expr::eval(phi, bind(v, c));
    };
    fam.explicit_fn_.d_v = [phi, bind, var](double v, double c) {
        return expr::eval_dual(phi, bind(v, c), var).der;
    };
    fam.explicit_fn_.d_c = [phi, bind](double v, double c) {
        return expr::eval_dual(phi, bind(v, c), "c").der;
    };
    return fam;
}

CharacteristicFamily CharacteristicFamily::from_explicit(FamilyForm form, ExplicitFn fn,
                                                         InvariantTag tag,
                                                         num::Bracket c_range) {
    if (form == FamilyForm::polar_implicit)
        raise(errc::bad_parameter, "from_explicit: use from_polar for the polar form");
    c_range.validate();
    CharacteristicFamily fam;
    fam.form_ = form;
    fam.tag_ = tag;
    fam.c_range_ = c_range;
    fam.explicit_fn_ = std::move(fn);
    return fam;
}

CharacteristicFamily CharacteristicFamily::from_polar(PolarFn fn, InvariantTag tag,
                                                      num::Bracket c_range) {
    c_range.validate();
    CharacteristicFamily fam;
    fam.form_ = FamilyForm::polar_implicit;
    fam.tag_ = tag;
    fam.c_range_ = c_range;
    fam.polar_fn_ = std::move(fn);
    return fam;
}

CharacteristicFamily CharacteristicFamily::from_solution(const cauchy::ImplicitSolution& sol,
                                                         cauchy::Family which) {
    const auto data = sol.data();
    ExplicitFn fn;
    fn.value = [sol, which](double y, double c) { return sol.trace_x(which, c, y); };
    fn.d_v = [sol, which](double y, double c) { return sol.trace_dx_dy(which, c, y); };
    fn.d_c = [sol, which](double y, double c) { return sol.trace_dx_dc(which, c, y); };
    auto fam = from_explicit(FamilyForm::x_of_y, std::move(fn),
                             which == cauchy::Family::first ? InvariantTag::first
                                                            : InvariantTag::second,
                             num::Bracket{data.a, data.b});
    // Curves leave the support at x(0; c) = c.
    fam.set_support_resolver([](double s) { return s; });
    return fam;
}

void CharacteristicFamily::set_support_resolver(std::function<double(double s)> resolver) {
    support_resolver_ = std::move(resolver);
}

void CharacteristicFamily::set_plane_curry(
    std::function<std::function<double(double c)>(double x, double y)> curry) {
    plane_curry_ = std::move(curry);
}

namespace {

[[noreturn]] void wrong_form(const char* op) {
    raise(errc::bad_parameter, std::string(op) + ": family is not in the required form");
}

}  // namespace

double CharacteristicFamily::value(double v, double c) const {
    if (!explicit_fn_.value) wrong_form("value");
    return explicit_fn_.value(v, c);
}
double CharacteristicFamily::d_v(double v, double c) const {
    if (!explicit_fn_.d_v) wrong_form("d_v");
    return explicit_fn_.d_v(v, c);
}
double CharacteristicFamily::d_c(double v, double c) const {
    if (!explicit_fn_.d_c) wrong_form("d_c");
    return explicit_fn_.d_c(v, c);
}
double CharacteristicFamily::polar_value(double r, double th, double c) const {
    if (!polar_fn_.value) wrong_form("polar_value");
    return polar_fn_.value(r, th, c);
}
double CharacteristicFamily::polar_d_r(double r, double th, double c) const {
    if (!polar_fn_.d_r) wrong_form("polar_d_r");
    return polar_fn_.d_r(r, th, c);
}
double CharacteristicFamily::polar_d_theta(double r, double th, double c) const {
    if (!polar_fn_.d_theta) wrong_form("polar_d_theta");
    return polar_fn_.d_theta(r, th, c);
}
double CharacteristicFamily::polar_d_c(double r, double th, double c) const {
    if (!polar_fn_.d_c) wrong_form("polar_d_c");
    return polar_fn_.d_c(r, th, c);
}

std::function<double(double c)> CharacteristicFamily::through_point_residual(double x,
                                                                             double y) const {
    if (plane_curry_) return plane_curry_(x, y);
    switch (form_) {
        case FamilyForm::y_of_x:
            return [this, x, y](double c) { return value(x, c) - y; };
        case FamilyForm::x_of_y:
            return [this, x, y](double c) { return value(y, c) - x; };
        case FamilyForm::polar_implicit: {
            const double r = std::hypot(x, y);
            double th = std::atan2(y, x);
            if (th < 0) th += 2.0 * M_PI;
            return [this, r, th](double c) { return polar_value(r, th, c); };
        }
    }
    wrong_form("through_point_residual");
}

Direction CharacteristicFamily::tangent_at(double x, double y, double c) const {
    switch (form_) {
        case FamilyForm::y_of_x:
            return Direction(1.0, d_v(x, c)).normalized();
        case FamilyForm::x_of_y:
            return Direction(d_v(y, c), 1.0).normalized();
        case FamilyForm::polar_implicit: {
            const double r = std::hypot(x, y);
            double th = std::atan2(y, x);
            if (th < 0) th += 2.0 * M_PI;
            const double fr = polar_d_r(r, th, c);
            const double ft = polar_d_theta(r, th, c);
            if (fr == 0.0 && ft == 0.0)
                raise(errc::singular_point,
                      "tangent_at: zero gradient of the family at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
            // (dr, dth) ~ (F_theta, -F_r) mapped to Cartesian.
            const double dx = std::cos(th) * ft + r * std::sin(th) * fr;
            const double dy = std::sin(th) * ft - r * std::cos(th) * fr;
            return Direction(dx, dy).normalized();
        }
    }
    wrong_form("tangent_at");
}

namespace {

// Evaluate g(c), mapping domain faults to "undefined sample".
std::optional<double> try_eval(const std::function<double(double)>& g, double c) {
    try {
        const double v = g(c);
        if (!std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const error& e) {
        if (e.code() == errc::domain_fault || e.code() == errc::out_of_range)
            return std::nullopt;
        throw;
    }
}

}  // namespace

std::vector<double> params_through(const CharacteristicFamily& fam, double x, double y,
                                   const ScanOptions& opt) {
    if (opt.subdivisions < 1) raise(errc::bad_parameter, "params_through: subdivisions >= 1");
    const auto g = fam.through_point_residual(x, y);
    const num::Bracket& range = fam.c_range();
    const int n = opt.subdivisions;

    std::vector<double> roots;
    std::optional<double> prev;
    double prev_c = range.lo;
    for (int i = 0; i <= n; ++i) {
        const double c = range.lo + range.width() * i / n;
        const auto v = try_eval(g, c);
        if (v && *v == 0.0) {
            roots.push_back(c);
        } else if (v && prev && *prev != 0.0 &&
                   std::signbit(*prev) != std::signbit(*v)) {
            roots.push_back(num::find_root(g, num::Bracket{prev_c, c}, opt.tol));
        }
        prev = v;
        prev_c = c;
    }
    return roots;
}

double param_for_point(const CharacteristicFamily& fam, const SupportPoint& p,
                       const ScanOptions& opt) {
    if (fam.support_resolver()) return fam.support_resolver()(p.s);
    const Vec2 xy = support_xy(p);
    auto roots = params_through(fam, xy.x, xy.y, opt);
    if (roots.empty())
        raise(errc::not_found, "param_for_point: no family curve through the support point s = " +
                                   std::to_string(p.s));
    if (roots.size() > 1) {
        std::string msg = "param_for_point: several family curves through s = " +
                          std::to_string(p.s) + "; candidates:";
        for (const double r : roots) msg += " " + std::to_string(r);
        raise(errc::ambiguous_root, msg);
    }
    return roots.front();
}

Direction slope_at(const CharacteristicFamily& fam, const SupportPoint& p, double c) {
    const Vec2 xy = support_xy(p);
    return fam.tangent_at(xy.x, xy.y, c);
}

Direction slope_at(const CharacteristicFamily& fam, const SupportPoint& p,
                   const ScanOptions& opt) {
    return slope_at(fam, p, param_for_point(fam, p, opt));
}

}  // namespace charflow::inverse
