#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "charflow/cauchy.hpp"
#include "charflow/expr.hpp"
#include "charflow/numerics.hpp"
#include "charflow/types.hpp"

namespace charflow::inverse {

enum class FamilyForm { y_of_x, x_of_y, polar_implicit };
enum class InvariantTag { first, second };  // u+y = const / u-y = const

// A point on the data support, identified by its parameter: the abscissa for
// the line y = 0, the polar angle for the unit circle.
struct SupportPoint {
    enum class Kind { line, circle };
    Kind kind;
    double s;

    static SupportPoint line(double x0) { return {Kind::line, x0}; }
    static SupportPoint circle(double theta) { return {Kind::circle, theta}; }
};

// One a-priori family of characteristic curves. Explicit forms evaluate
// phi(v, c) with v = x (y_of_x) or v = y (x_of_y); the polar form evaluates
// F(r, theta, c) = 0. Evaluators are closures so a family can be backed by a
// parsed expression, a traced forward solution, or hand-coded formulas.
class CharacteristicFamily {
public:
    struct ExplicitFn {
        std::function<double(double v, double c)> value;
        std::function<double(double v, double c)> d_v;
        std::function<double(double v, double c)> d_c;
    };
    struct PolarFn {
        std::function<double(double r, double th, double c)> value;
        std::function<double(double r, double th, double c)> d_r;
        std::function<double(double r, double th, double c)> d_theta;
        std::function<double(double r, double th, double c)> d_c;
    };

    static CharacteristicFamily from_expression(FamilyForm form, expr::Expression phi,
                                                InvariantTag tag, num::Bracket c_range,
                                                expr::Bindings params = {});
    static CharacteristicFamily from_explicit(FamilyForm form, ExplicitFn fn, InvariantTag tag,
                                              num::Bracket c_range);
    static CharacteristicFamily from_polar(PolarFn fn, InvariantTag tag, num::Bracket c_range);
    // The traced characteristic family x = x(y; c) of a forward solution,
    // with exact analytic partials.
    static CharacteristicFamily from_solution(const cauchy::ImplicitSolution& sol,
                                              cauchy::Family fam);

    FamilyForm form() const { return form_; }
    InvariantTag tag() const { return tag_; }
    const num::Bracket& c_range() const { return c_range_; }
    void set_c_range(num::Bracket range) {
        range.validate();
        c_range_ = range;
    }
    const std::optional<expr::Expression>& expression() const { return source_expr_; }

    // Closed-form map from a support point to the parameter of the curve
    // through it; bypasses the generic scan when set.
    void set_support_resolver(std::function<double(double s)> resolver);
    const std::function<double(double s)>& support_resolver() const { return support_resolver_; }

    // Fast c -> g(c) residual factory for a fixed plane point; generic
    // fallback simply binds the evaluators.
    void set_plane_curry(
        std::function<std::function<double(double c)>(double x, double y)> curry);

    double value(double v, double c) const;    // explicit forms
    double d_v(double v, double c) const;      // d phi / d free-variable
    double d_c(double v, double c) const;      // d phi / d c
    double polar_value(double r, double th, double c) const;
    double polar_d_r(double r, double th, double c) const;
    double polar_d_theta(double r, double th, double c) const;
    double polar_d_c(double r, double th, double c) const;

    // g(c) whose roots are curves through the plane point (x, y).
    std::function<double(double c)> through_point_residual(double x, double y) const;

    // Tangent direction of the curve with parameter c at the plane point.
    Direction tangent_at(double x, double y, double c) const;

private:
    FamilyForm form_;
    InvariantTag tag_;
    num::Bracket c_range_{0.0, 1.0};
    ExplicitFn explicit_fn_;
    PolarFn polar_fn_;
    std::optional<expr::Expression> source_expr_;
    std::function<double(double s)> support_resolver_;
    std::function<std::function<double(double c)>(double x, double y)> plane_curry_;
};

struct ScanOptions {
    int subdivisions = 256;
    num::Tolerance tol = {};
};

// All parameters in c_range placing a curve of the family through (x, y),
// found by a sign-change scan over the subdivision plus root refinement.
// Evaluation faults make a sample undefined rather than failing the scan.
std::vector<double> params_through(const CharacteristicFamily& fam, double x, double y,
                                   const ScanOptions& opt = {});

// Parameter of the family curve through a support point. Uses the family's
// closed-form resolver when present; errors when no curve or several curves
// pass through the point.
double param_for_point(const CharacteristicFamily& fam, const SupportPoint& p,
                       const ScanOptions& opt = {});

// Tangent direction of the family curve at a support point, as a normalized
// homogeneous (dx, dy) pair.
Direction slope_at(const CharacteristicFamily& fam, const SupportPoint& p,
                   const ScanOptions& opt = {});
Direction slope_at(const CharacteristicFamily& fam, const SupportPoint& p, double c);

inline Vec2 support_xy(const SupportPoint& p) {
    if (p.kind == SupportPoint::Kind::line) return {p.s, 0.0};
    return {std::cos(p.s), std::sin(p.s)};
}

}  // namespace charflow::inverse
