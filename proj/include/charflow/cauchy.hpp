#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "charflow/expr.hpp"
#include "charflow/interp.hpp"
#include "charflow/numerics.hpp"
#include "charflow/types.hpp"

namespace charflow::cauchy {

// Cauchy data u(x,0) = tau(x), u_y(x,0) = nu(x) on the support [a, b].
struct InitialData {
    double a;
    double b;
    expr::Expression tau;  // in x
    expr::Expression nu;   // in x
    // tau' must stay clear of zero on the support; checked by sampling.
    double degeneracy_threshold = 1e-8;
    int check_samples = 128;

    double tau_at(double x) const;
    double tau_prime_at(double x) const;
    double nu_at(double x) const;
};

enum class Family { first, second };  // u+y = const, u-y = const

struct CharacteristicCurve {
    Family family;
    double c;  // support abscissa the curve passes through
    std::vector<Vec2> points;
    std::vector<double> u_values;
    // y samples skipped because tau(c) -/+ 2y left the data range
    std::vector<double> dropped;
};

// Integral representation of the solution:
//   x = a + int_a^{T(u+y)} F1 + int_a^{T(u-y)} G1,
// with F1 = (1-nu)/2, G1 = (1+nu)/2 and T the inverse of tau on [a, b].
// Cumulative integrals of F1 and G1 are cached on a Chebyshev grid at build
// time, so all evaluation methods are pure and safe to share across threads.
class ImplicitSolution {
public:
    ImplicitSolution(InitialData data, num::Tolerance tol = {}, int cache_nodes = 512);

    double anchor() const { return data_.a; }
    const InitialData& data() const { return data_; }
    const num::Bracket& tau_range() const { return tau_range_; }
    int orientation() const { return orientation_; }  // sign of tau'

    double f1(double t) const;  // (1 - nu(t)) / 2
    double g1(double t) const;  // (1 + nu(t)) / 2
    double inverse_tau(double z) const;

    // Cached cumulative integrals from the anchor.
    double int_f1(double s) const;
    double int_g1(double s) const;

    double residual(double u, double x, double y) const;

    // Interval of u with both u+y and u-y inside the data range; empty ->
    // outside the definition domain.
    std::optional<num::Bracket> admissible_u(double y) const;

    // Root of the residual inside the admissible interval. Scans
    // `scan_points` subintervals for sign changes; no root -> outside-domain
    // error, several roots -> ambiguity error listing the candidates.
    double solve_u(double x, double y, const num::Tolerance& tol = {},
                   int scan_points = 128) const;

    CharacteristicCurve trace_first(double c, const std::vector<double>& y_samples) const;
    CharacteristicCurve trace_second(double c, const std::vector<double>& y_samples) const;

    // x(y; c) of a traced characteristic and its exact partials.
    double trace_x(Family fam, double c, double y) const;
    double trace_dx_dy(Family fam, double c, double y) const;
    double trace_dx_dc(Family fam, double c, double y) const;

private:
    double clamp_to_range(double z) const;

    InitialData data_;
    num::Tolerance tol_;
    num::Bracket tau_range_;
    int orientation_;
    std::shared_ptr<const num::MonotoneInverse> inverse_;
    std::shared_ptr<const interp::ChebyshevTable> int_f1_, int_g1_;
};

ImplicitSolution build_solution(InitialData data, num::Tolerance tol = {});

// Both characteristic directions at a support point, as homogeneous (dx, dy)
// pairs: first = (nu+1, -tau'), second = (nu-1, -tau'), normalized.
std::pair<Vec2, Vec2> support_slopes(const InitialData& data, double x0);

}  // namespace charflow::cauchy
