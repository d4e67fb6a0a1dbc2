// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "charflow/cauchy.hpp"
#include "charflow/corpus.hpp"
#include "charflow/expr.hpp"
#include "charflow/geometry.hpp"
#include "charflow/inverse.hpp"
#include "charflow/numerics.hpp"

using namespace charflow;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. forward solver vs the closed-form residual on a 21x21 grid
Outcome criterion1() {
    const auto bundle = corpus::get_example("example1");
    const cauchy::ImplicitSolution sol(*bundle.initial_data);
    double worst = 0.0;
    int solved = 0;
    for (const double x : linspace(-1.0, 1.0, 21)) {
        for (const double y : linspace(-0.4, 0.0, 21)) {
            double u = 0.0;
            try {
                u = sol.solve_u(x, y);
            } catch (const error&) {
                continue;  // outside the definition domain
            }
            ++solved;
            worst = std::max(worst, std::abs(bundle.oracles.implicit_residual(u, x, y)));
        }
    }
    std::ostringstream os;
    os << "max |closed-form residual| = " << sci(worst) << " over " << solved
       << " in-domain points";
    return {worst <= 1e-8 && solved > 200, os.str()};
}

// 2. characteristic traces at c = -1 match the printed parametric curves
Outcome criterion2() {
    const auto bundle = corpus::get_example("example1");
    const cauchy::ImplicitSolution sol(*bundle.initial_data);
    const double c = -1.0;
    double worst = 0.0;
    const auto first = sol.trace_first(c, linspace(-1.0, 0.0, 50));
    for (std::size_t i = 0; i < first.points.size(); ++i)
        worst = std::max(worst, std::abs(first.points[i].x -
                                         bundle.oracles.first_trace_x(first.points[i].y, c)));
    const auto second = sol.trace_second(c, linspace(0.0, 1.0, 50));
    for (std::size_t i = 0; i < second.points.size(); ++i)
        worst = std::max(worst,
                         std::abs(second.points[i].x -
                                  bundle.oracles.second_trace_x(second.points[i].y, c)));
    const bool full = first.points.size() == 50 && second.points.size() == 50;
    return {worst <= 1e-8 && full, "max trace deviation = " + sci(worst)};
}

// 3. discriminant envelope satisfies e^{1+x}(1 - e^{2y}) = 2
Outcome criterion3() {
    const auto bundle = corpus::get_example("example1");
    const auto env = geom::envelope_discriminant(bundle.fam1, linspace(-1.0, 1.0, 41),
                                                 {-6.0, -1e-6}, {1e-12, 0.0, 200});
    if (env.points.empty()) return {false, "no envelope points emitted"};
    double worst = 0.0;
    for (const auto& p : env.points)
        worst = std::max(worst, std::abs(bundle.oracles.envelope_residual(p.x, p.y)));
    return {worst <= 1e-6,
            "max |envelope residual| = " + sci(worst) + " over " +
                std::to_string(env.points.size()) + " points"};
}

// 4. inverse recovery of tau' = 1 and nu = 1 - e^x, including x = ln 2
Outcome criterion4() {
    const auto bundle = corpus::get_example("example1");
    const auto rec =
        inverse::recover_line(bundle.fam1, bundle.fam2, {-1.0, 1.0}, 41, {0.0, 0.0});
    double worst = 0.0;
    for (const auto& s : rec.samples) {
        worst = std::max(worst, std::abs(s.u_x - 1.0));
        worst = std::max(worst, std::abs(s.u_y - (1.0 - std::exp(s.s))));
    }
    // the singular-slope abscissa: first family tangent is vertical here
    const double x_sing = std::log(2.0);
    const auto m1 = inverse::slope_at(bundle.fam1, inverse::SupportPoint::line(x_sing));
    const auto m2 = inverse::slope_at(bundle.fam2, inverse::SupportPoint::line(x_sing));
    const auto [tp, nu] = inverse::recover_pointwise(m1, m2);
    worst = std::max(worst, std::abs(tp - 1.0));
    worst = std::max(worst, std::abs(nu - (1.0 - std::exp(x_sing))));
    return {worst <= 1e-8, "max recovery error = " + sci(worst) + " (includes x = ln 2)"};
}

// 5. inverse recovery of the translate example constants and tau = -x/2
Outcome criterion5() {
    const auto bundle = corpus::get_example("example2", 2.0, 1.0);
    const auto rec =
        inverse::recover_line(bundle.fam1, bundle.fam2, {-1.0, 1.0}, 41, {0.0, 0.0});
    double worst = 0.0;
    for (const auto& s : rec.samples) {
        worst = std::max(worst, std::abs(s.u_x + 0.5));
        worst = std::max(worst, std::abs(s.u_y));
        worst = std::max(worst, std::abs(s.u + 0.5 * s.s));
    }
    return {worst <= 1e-8, "max recovery error = " + sci(worst)};
}

// 6. degeneration locus of the translate example pins y = a - b = 1
Outcome criterion6() {
    const auto bundle = corpus::get_example("example2", 2.0, 1.0);
    const auto s1 = geom::slope_field_from_family(bundle.fam1);
    const auto s2 = geom::slope_field_from_family(bundle.fam2);
    const BBox bbox{-4.0, 4.0, 0.2, 1.4};
    const int nx = 200, ny = 200;
    const auto points = geom::degeneration_locus(s1, s2, bbox, nx, ny);
    if (points.empty()) return {false, "empty locus"};

    const double cell_w = (bbox.x_max - bbox.x_min) / nx;
    const double cell_h = (bbox.y_max - bbox.y_min) / ny;
    double stray = 0.0;
    std::vector<double> chain_y(nx, std::numeric_limits<double>::quiet_NaN());
    for (const auto& p : points) {
        stray = std::max(stray, std::abs(p.y - 1.0));
        if (std::abs(p.y - 1.0) <= cell_h) {
            int col = static_cast<int>(std::floor((p.x - bbox.x_min) / cell_w));
            col = std::min(std::max(col, 0), nx - 1);
            chain_y[col] = p.y;
        }
    }
    int missing = 0;
    bool connected = true;
    for (int i = 0; i < nx; ++i) {
        if (std::isnan(chain_y[i])) ++missing;
        if (i > 0 && !std::isnan(chain_y[i]) && !std::isnan(chain_y[i - 1]) &&
            std::abs(chain_y[i] - chain_y[i - 1]) > cell_h)
            connected = false;
    }
    std::ostringstream os;
    os << "chain columns missing = " << missing << ", max |y - 1| = " << sci(stray)
       << ", connected = " << (connected ? "yes" : "no");
    return {missing == 0 && connected && stray <= 2.0 * cell_h, os.str()};
}

// 7. circle recovery against the closed forms (alpha = 1/2)
Outcome criterion7() {
    const auto bundle = corpus::get_example("example3", 2.0, 1.0);
    const auto rec = inverse::recover_circle(bundle.fam1, bundle.fam2,
                                             linspace(0.01, 2.0 * M_PI - 0.01, 200),
                                             {0.5 * M_PI, 0.0});
    double worst_r = 0.0, worst_t = 0.0, worst_u = 0.0;
    for (const auto& s : rec.samples) {
        worst_r = std::max(worst_r, std::abs(s.u_r - 2.0 * std::cos(s.s)));
        worst_t = std::max(worst_t, std::abs(s.u_theta - 0.5 * std::sin(s.s)));
        worst_u = std::max(worst_u, std::abs(s.u + 0.5 * std::cos(s.s)));
    }
    std::ostringstream os;
    os << "sup|u_r - 2cos| = " << sci(worst_r) << ", sup|u_th - sin/2| = " << sci(worst_t)
       << ", sup|u + cos/2| = " << sci(worst_u);
    return {worst_r <= 1e-5 && worst_t <= 1e-5 && worst_u <= 1e-5, os.str()};
}

// 8. circle example gap: one component, interior-confined, area near pi/4
Outcome criterion8() {
    const auto bundle = corpus::get_example("example3", 2.0, 1.0);
    inverse::ScanOptions scan;
    scan.subdivisions = bundle.coverage_subdivisions;
    geom::SupportTrace trace{inverse::SupportPoint::Kind::circle, 0.0, 0.0};
    const BBox bbox{-1.5, 1.2, -1.0, 1.0};
    const auto grid = geom::coverage_mask(bundle.fam1, bundle.fam2, trace, bbox, 400, 400, scan);
    const auto gaps = geom::find_gaps(grid);
    if (gaps.size() != 1)
        return {false, "expected 1 gap component, found " + std::to_string(gaps.size())};

    int inside = 0;
    for (const auto& [i, j] : gaps[0].cells) {
        const Vec2 p = grid.center(i, j);
        if (bundle.oracles.gap_contains(p.x, p.y)) ++inside;
    }
    const double inside_frac = double(inside) / double(gaps[0].cells.size());

    // Monte-Carlo area of the printed envelope interior
    std::mt19937 rng(20260810);
    std::uniform_real_distribution<double> ux(bbox.x_min, bbox.x_max);
    std::uniform_real_distribution<double> uy(bbox.y_min, bbox.y_max);
    const int n_mc = 400000;
    int hits = 0;
    for (int k = 0; k < n_mc; ++k)
        if (bundle.oracles.gap_contains(ux(rng), uy(rng))) ++hits;
    const double mc_area = (bbox.x_max - bbox.x_min) * (bbox.y_max - bbox.y_min) *
                           double(hits) / double(n_mc);
    const double rel = std::abs(gaps[0].area - mc_area) / mc_area;

    std::ostringstream os;
    os << "one component, interior fraction = " << sci(inside_frac)
       << ", area = " << sci(gaps[0].area) << " vs MC " << sci(mc_area)
       << " (rel = " << sci(rel) << ")";
    return {inside_frac >= 0.95 && rel <= 0.10, os.str()};
}

// 9. round trip: forward-traced families reproduce the data
Outcome criterion9() {
    std::mt19937 rng(7001);
    std::uniform_real_distribution<double> amp(0.05, 0.25);
    std::uniform_real_distribution<double> freq(0.7, 2.0);
    std::uniform_real_distribution<double> base(0.8, 1.6);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        char tau_buf[128], nu_buf[128];
        const double k = base(rng), s = amp(rng), w = freq(rng);
        const double nv = amp(rng), nw = freq(rng), n0 = amp(rng);
        // tau' = k + s w cos(w x) >= k - 0.5 > 0.3
        std::snprintf(tau_buf, sizeof tau_buf, "%.17g*x + %.17g*sin(%.17g*x)", k, s, w);
        std::snprintf(nu_buf, sizeof nu_buf, "%.17g + %.17g*cos(%.17g*x)", n0, nv, nw);

        cauchy::InitialData data;
        data.a = -1.0;
        data.b = 1.0;
        data.tau = expr::parse(tau_buf);
        data.nu = expr::parse(nu_buf);
        const cauchy::ImplicitSolution sol(data);
        const auto fam1 =
            inverse::CharacteristicFamily::from_solution(sol, cauchy::Family::first);
        const auto fam2 =
            inverse::CharacteristicFamily::from_solution(sol, cauchy::Family::second);
        const auto rec = inverse::recover_line(fam1, fam2, {-0.9, 0.9}, 25,
                                               {0.0, data.tau_at(0.0)});
        for (const auto& sample : rec.samples) {
            worst = std::max(worst, std::abs(sample.u_x - data.tau_prime_at(sample.s)));
            worst = std::max(worst, std::abs(sample.u_y - data.nu_at(sample.s)));
        }
    }
    return {worst <= 1e-6, "max round-trip error = " + sci(worst) + " over 5 data sets"};
}

// 10. u = x exactly for flat data; PDE residual shrinks under refinement
Outcome criterion10() {
    cauchy::InitialData flat;
    flat.a = -1.0;
    flat.b = 1.0;
    flat.tau = expr::parse("x");
    flat.nu = expr::parse("0");
    const cauchy::ImplicitSolution flat_sol(flat);
    double worst_flat = 0.0;
    for (const double x : linspace(-0.7, 0.7, 15))
        for (const double y : linspace(-0.25, 0.25, 7))
            worst_flat = std::max(worst_flat, std::abs(flat_sol.solve_u(x, y) - x));

    const auto bundle = corpus::get_example("example1");
    const cauchy::ImplicitSolution sol(*bundle.initial_data, {1e-13, 1e-13, 400});
    auto max_residual = [&](double h) {
        double worst = 0.0;
        for (const double x : linspace(-0.4, 0.4, 5)) {
            for (const double y : linspace(-0.18, -0.06, 4)) {
                const double u0 = sol.solve_u(x, y);
                const double upx = sol.solve_u(x + h, y), umx = sol.solve_u(x - h, y);
                const double upy = sol.solve_u(x, y + h), umy = sol.solve_u(x, y - h);
                const double upp = sol.solve_u(x + h, y + h), upm = sol.solve_u(x + h, y - h);
                const double ump = sol.solve_u(x - h, y + h), umm = sol.solve_u(x - h, y - h);
                const double ux = (upx - umx) / (2 * h), uy = (upy - umy) / (2 * h);
                const double uxx = (upx - 2 * u0 + umx) / (h * h);
                const double uyy = (upy - 2 * u0 + umy) / (h * h);
                const double uxy = (upp - upm - ump + umm) / (4 * h * h);
                worst = std::max(worst,
                                 std::abs((uy * uy - 1) * uxx - 2 * ux * uy * uxy +
                                          ux * ux * uyy));
            }
        }
        return worst;
    };
    const double coarse = max_residual(4e-3);
    const double fine = max_residual(2e-3);
    const double factor = coarse / fine;
    std::ostringstream os;
    os << "flat |u - x| = " << sci(worst_flat) << ", residual " << sci(coarse) << " -> "
       << sci(fine) << " (factor " << sci(factor) << ")";
    return {worst_flat <= 1e-9 && factor >= 1.8, os.str()};
}

// 11. kernel suites: quadrature, AD vs finite differences, parser offsets
Outcome criterion11() {
    // twenty analytic integrals
    struct Integral {
        num::RealFn f;
        double lo, hi, expected;
    };
    const double pi = M_PI;
    const Integral integrals[] = {
        {[](double t) { return t; }, 0, 1, 0.5},
        {[](double t) { return t * t; }, 0, 1, 1.0 / 3.0},
        {[](double t) { return t * t * t; }, -1, 1, 0.0},
        {[](double t) { return std::sin(t); }, 0, pi, 2.0},
        {[](double t) { return std::cos(t); }, 0, pi / 2, 1.0},
        {[](double t) { return std::exp(-t); }, 0, 1, 1.0 - std::exp(-1.0)},
        {[](double t) { return 1.0 / (1.0 + t * t); }, 0, 1, pi / 4},
        {[](double t) { return std::sqrt(t); }, 0, 1, 2.0 / 3.0},
        {[](double t) { return std::log(t); }, 1, 2, 2 * std::log(2.0) - 1},
        {[](double t) { return t * std::exp(t * t); }, 0, 1, 0.5 * (std::exp(1.0) - 1)},
        {[](double t) { return std::sinh(t); }, 0, 1, std::cosh(1.0) - 1},
        {[](double t) { return std::cosh(t); }, -1, 1, 2 * std::sinh(1.0)},
        {[](double t) { return 1.0 / t; }, 1, std::exp(1.0), 1.0},
        {[](double t) { return std::sin(t) * std::sin(t); }, 0, pi, pi / 2},
        {[](double t) { return std::exp(t) * std::sin(t); }, 0, pi, (std::exp(pi) + 1) / 2},
        {[](double t) { return 1.0 / std::sqrt(1 + t); }, 0, 3, 2.0},
        {[](double t) { return t * std::sin(t); }, 0, pi, pi},
        {[](double t) { return std::atan(t); }, 0, 1, pi / 4 - 0.5 * std::log(2.0)},
        {[](double t) { return std::abs(t); }, -1, 2, 2.5},
        {[](double t) { return std::exp(-t * t); }, -5, 5, std::sqrt(pi) * std::erf(5.0)},
    };
    int quad_ok = 0;
    double worst_quad = 0.0;
    for (const auto& c : integrals) {
        const double got = num::integrate(c.f, c.lo, c.hi, {1e-11, 1e-11, 400});
        const double err = std::abs(got - c.expected);
        worst_quad = std::max(worst_quad, err);
        if (err <= 1e-10 + 1e-10 * std::abs(got)) ++quad_ok;
    }

    // AD against central differences on the corpus expressions
    struct AdCase {
        const char* text;
        std::vector<std::pair<std::string, std::pair<double, double>>> box;
    };
    const std::vector<AdCase> ad_cases = {
        {"1 - exp(x)", {{"x", {-1, 1}}}},
        {"1/2*exp(c) + c - 2*y - 1/2*exp(c - 2*y)", {{"c", {-1, 1}}, {"y", {-0.8, 0.8}}}},
        {"-1/2*exp(c) + 1/2*exp(c + 2*y) + c", {{"c", {-1, 1}}, {"y", {-0.8, 0.8}}}},
        {"c - 2*sqrt(2/(y + 1) - 1)", {{"c", {-2, 2}}, {"y", {-0.5, 0.9}}}},
        {"2*1*(1 - r*cos(theta)) / (r^2 - 2*r*cos(theta) + 1)"
         " - 2^3 / (2^2 + (2*1*r*sin(theta) / (r^2 - 2*r*cos(theta) + 1) + c)^2)",
         {{"r", {0.3, 0.9}}, {"theta", {0.5, 5.5}}, {"c", {-3, 3}}}},
    };
    std::mt19937 rng(515151);
    bool ad_ok = true;
    double worst_ad = 0.0;
    for (const auto& kase : ad_cases) {
        const auto e = expr::parse(kase.text);
        for (int trial = 0; trial < 100; ++trial) {
            expr::Bindings b;
            for (const auto& [var, range] : kase.box) {
                std::uniform_real_distribution<double> dist(range.first, range.second);
                b.set(var, dist(rng));
            }
            for (const auto& [var, range] : kase.box) {
                const auto d = expr::eval_dual(e, b, var);
                expr::Bindings bp = b, bm = b;
                bp.set(var, *b.find(var) + 1e-6);
                bm.set(var, *b.find(var) - 1e-6);
                const double fd = (expr::eval(e, bp) - expr::eval(e, bm)) / 2e-6;
                const double rel = std::abs(d.der - fd) / (1.0 + std::abs(d.der));
                worst_ad = std::max(worst_ad, rel);
                if (rel >= 1e-6) ad_ok = false;
            }
        }
    }

    // parser offsets on the malformed set
    struct Malformed {
        const char* text;
        std::size_t offset;
    };
    const Malformed malformed[] = {
        {"2*+", 2},  {"", 0},     {"(1+2", 4}, {"1+*3", 2}, {"foo(1)", 0},
        {"sin()", 4}, {"x y", 2}, {"1/()", 3}, {"2^", 2},   {"@", 0},
    };
    int parse_ok = 0;
    for (const auto& m : malformed) {
        try {
            expr::parse(m.text);
        } catch (const error& e) {
            if (e.offset && *e.offset == m.offset) ++parse_ok;
        }
    }

    std::ostringstream os;
    os << "quadrature " << quad_ok << "/20 (worst " << sci(worst_quad) << "), AD worst rel "
       << sci(worst_ad) << ", parser offsets " << parse_ok << "/10";
    return {quad_ok == 20 && ad_ok && parse_ok == 10, os.str()};
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "forward solver residual (example 1)", criterion1},
        {2, "characteristic traces (example 1, c = -1)", criterion2},
        {3, "discriminant envelope (example 1)", criterion3},
        {4, "inverse recovery on y = 0 (example 1)", criterion4},
        {5, "inverse recovery constants (example 2)", criterion5},
        {6, "parabolic degeneration line (example 2)", criterion6},
        {7, "circle recovery closed forms (example 3)", criterion7},
        {8, "definition-domain gap (example 3)", criterion8},
        {9, "forward/inverse round trip", criterion9},
        {10, "PDE residual and exact flat solution", criterion10},
        {11, "kernel suites (quadrature, AD, parser)", criterion11},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        Outcome outcome{false, ""};
        try {
            outcome = entry.fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (outcome.ok ? "[PASS]" : "[FAIL]") << " criterion " << entry.id << ": "
                  << entry.name << ": " << outcome.detail << "\n";
        if (!outcome.ok) ++failures;
    }
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 11 criteria passed\n";
    return 0;
}
