#include "charflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace charflow::geom {

using inverse::CharacteristicFamily;
using inverse::FamilyForm;

Envelope envelope_discriminant(const CharacteristicFamily& fam,
                               const std::vector<double>& c_grid, num::Bracket v_range,
                               const num::Tolerance& tol, int scan) {
    if (fam.form() == FamilyForm::polar_implicit)
        raise(errc::bad_parameter, "envelope_discriminant: explicit family form required");
    v_range.validate();
    if (scan < 2) raise(errc::bad_parameter, "envelope_discriminant: scan must be >= 2");

    Envelope env;
    env.family = fam.tag();
    env.kind = EnvelopeKind::discriminant;

    for (const double c : c_grid) {
        auto g = [&](double v) { return fam.d_c(v, c); };
        // scan the free variable for zeros of d phi / d c
        std::optional<double> prev;
        double prev_v = v_range.lo;
        for (int i = 0; i <= scan; ++i) {
            const double v = v_range.lo + v_range.width() * i / scan;
            std::optional<double> val;
            try {
                const double raw = g(v);
                if (std::isfinite(raw)) val = raw;
            } catch (const error& e) {
                if (e.code() != errc::domain_fault && e.code() != errc::out_of_range) throw;
            }
            if (val && prev &&
                (*val == 0.0 ||
                 (*prev != 0.0 && std::signbit(*prev) != std::signbit(*val)))) {
                const double root = *val == 0.0
                                        ? v
                                        : num::find_root(g, num::Bracket{prev_v, v}, tol);
                const double other = fam.value(root, c);
                const Vec2 point = fam.form() == FamilyForm::y_of_x ? Vec2{root, other}
                                                                    : Vec2{other, root};
                env.points.push_back(point);
                env.params.push_back(c);
            }
            prev = val;
            prev_v = v;
        }
    }
    return env;
}

SlopeField slope_field_from_family(const CharacteristicFamily& fam,
                                   const inverse::ScanOptions& opt) {
    return [fam, opt](double x, double y) -> std::optional<Direction> {
        std::vector<double> roots;
        try {
            roots = inverse::params_through(fam, x, y, opt);
        } catch (const error&) {
            return std::nullopt;
        }
        if (roots.size() != 1) return std::nullopt;
        try {
            return fam.tangent_at(x, y, roots.front());
        } catch (const error&) {
            return std::nullopt;
        }
    };
}

std::pair<SlopeField, SlopeField> slope_fields_from_solution(
    const cauchy::ImplicitSolution& sol, double fd_step) {
    auto derivs = [sol, fd_step](double x, double y) -> std::optional<std::pair<double, double>> {
        try {
            const double h = fd_step;
            const double u_x = (sol.solve_u(x + h, y) - sol.solve_u(x - h, y)) / (2 * h);
            const double u_y = (sol.solve_u(x, y + h) - sol.solve_u(x, y - h)) / (2 * h);
            return std::make_pair(u_x, u_y);
        } catch (const error& e) {
            if (is_math_error(e.code())) return std::nullopt;
            throw;
        }
    };
    SlopeField first = [derivs](double x, double y) -> std::optional<Direction> {
        const auto d = derivs(x, y);
        if (!d) return std::nullopt;
        return Direction(d->second + 1.0, -d->first).normalized();
    };
    SlopeField second = [derivs](double x, double y) -> std::optional<Direction> {
        const auto d = derivs(x, y);
        if (!d) return std::nullopt;
        return Direction(d->second - 1.0, -d->first).normalized();
    };
    return {first, second};
}

namespace {

// Normalized cross of the two field directions; nullopt where either is
// undefined.
std::optional<double> field_cross(const SlopeField& s1, const SlopeField& s2, double x,
                                  double y) {
    const auto d1 = s1(x, y);
    if (!d1) return std::nullopt;
    const auto d2 = s2(x, y);
    if (!d2) return std::nullopt;
    return cross(d1->normalized(), d2->normalized());
}

}  // namespace

std::vector<Vec2> degeneration_locus(const SlopeField& s1, const SlopeField& s2,
                                     const BBox& bbox, int nx, int ny,
                                     const LocusOptions& opt) {
    bbox.validate();
    if (nx < 1 || ny < 1) raise(errc::bad_parameter, "degeneration_locus: grid must be >= 1x1");

    const int px = nx + 1, py = ny + 1;
    auto node_x = [&](int i) { return bbox.x_min + (bbox.x_max - bbox.x_min) * i / nx; };
    auto node_y = [&](int j) { return bbox.y_min + (bbox.y_max - bbox.y_min) * j / ny; };

    std::vector<std::optional<double>> g(static_cast<std::size_t>(px) * py);
    for (int j = 0; j < py; ++j)
        for (int i = 0; i < px; ++i)
            g[static_cast<std::size_t>(j) * px + i] = field_cross(s1, s2, node_x(i), node_y(j));

    std::vector<Vec2> points;

    auto emit_zero_crossing = [&](Vec2 a, Vec2 b, double ga, double gb) {
        // bisection for the zero of the cross along the edge
        for (int it = 0; it < opt.boundary_bisections; ++it) {
            const Vec2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
            const auto gm = field_cross(s1, s2, mid.x, mid.y);
            if (!gm) break;  // boundary intrudes; give up on this edge
            if (*gm == 0.0 || std::signbit(*gm) == std::signbit(ga)) {
                a = mid;
                ga = *gm;
                if (*gm == 0.0) break;
            } else {
                b = mid;
                gb = *gm;
            }
        }
        (void)gb;
        points.push_back(a);
    };

    auto emit_boundary = [&](Vec2 inside, Vec2 outside) {
        double g_in = 0.0;
        bool have = false;
        for (int it = 0; it < opt.boundary_bisections; ++it) {
            const Vec2 mid{0.5 * (inside.x + outside.x), 0.5 * (inside.y + outside.y)};
            const auto gm = field_cross(s1, s2, mid.x, mid.y);
            if (gm) {
                inside = mid;
                g_in = *gm;
                have = true;
            } else {
                outside = mid;
            }
        }
        if (have && std::abs(g_in) <= opt.tol) points.push_back(inside);
    };

    auto process_edge = [&](int i0, int j0, int i1, int j1) {
        const auto& ga = g[static_cast<std::size_t>(j0) * px + i0];
        const auto& gb = g[static_cast<std::size_t>(j1) * px + i1];
        const Vec2 pa{node_x(i0), node_y(j0)};
        const Vec2 pb{node_x(i1), node_y(j1)};
        if (ga && gb) {
            if (*ga == 0.0) return;  // node hits are collected separately
            if (std::signbit(*ga) != std::signbit(*gb) && *gb != 0.0)
                emit_zero_crossing(pa, pb, *ga, *gb);
        } else if (ga && !gb) {
            emit_boundary(pa, pb);
        } else if (!ga && gb) {
            emit_boundary(pb, pa);
        }
    };

    for (int j = 0; j < py; ++j)
        for (int i = 0; i < px; ++i) {
            const auto& gij = g[static_cast<std::size_t>(j) * px + i];
            if (gij && std::abs(*gij) <= opt.tol)
                points.push_back({node_x(i), node_y(j)});
            if (i + 1 < px) process_edge(i, j, i + 1, j);
            if (j + 1 < py) process_edge(i, j, i, j + 1);
        }

    return points;
}

DomainGrid coverage_mask(const CharacteristicFamily& fam1, const CharacteristicFamily& fam2,
                         SupportTrace support, const BBox& bbox, int nx, int ny,
                         const inverse::ScanOptions& opt) {
    bbox.validate();
    if (nx < 1 || ny < 1) raise(errc::bad_parameter, "coverage_mask: grid must be >= 1x1");

    DomainGrid grid;
    grid.bbox = bbox;
    grid.nx = nx;
    grid.ny = ny;
    grid.support = support;
    grid.cells.assign(static_cast<std::size_t>(nx) * ny, CellClass::exterior_uncovered);

    auto covered_by = [&](const CharacteristicFamily& fam, double x, double y) {
        try {
            return !inverse::params_through(fam, x, y, opt).empty();
        } catch (const error& e) {
            if (is_math_error(e.code())) return false;
            throw;
        }
    };

    std::vector<std::uint8_t> covered(static_cast<std::size_t>(nx) * ny, 0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Vec2 p = grid.center(i, j);
            if (covered_by(fam1, p.x, p.y) && covered_by(fam2, p.x, p.y))
                covered[static_cast<std::size_t>(j) * nx + i] = 1;
        }

    // Flood uncovered cells from the bbox boundary: those are exterior, the
    // enclosed remainder are gaps.
    std::vector<std::uint8_t> exterior(static_cast<std::size_t>(nx) * ny, 0);
    std::deque<std::pair<int, int>> queue;
    auto push_if_uncovered = [&](int i, int j) {
        const std::size_t k = static_cast<std::size_t>(j) * nx + i;
        if (!covered[k] && !exterior[k]) {
            exterior[k] = 1;
            queue.emplace_back(i, j);
        }
    };
    for (int i = 0; i < nx; ++i) {
        push_if_uncovered(i, 0);
        push_if_uncovered(i, ny - 1);
    }
    for (int j = 0; j < ny; ++j) {
        push_if_uncovered(0, j);
        push_if_uncovered(nx - 1, j);
    }
    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        if (i > 0) push_if_uncovered(i - 1, j);
        if (i + 1 < nx) push_if_uncovered(i + 1, j);
        if (j > 0) push_if_uncovered(i, j - 1);
        if (j + 1 < ny) push_if_uncovered(i, j + 1);
    }

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * nx + i;
            grid.cells[k] = covered[k] ? CellClass::covered
                            : exterior[k] ? CellClass::exterior_uncovered
                                          : CellClass::gap;
        }
    return grid;
}

std::vector<GapComponent> find_gaps(const DomainGrid& grid) {
    const int nx = grid.nx, ny = grid.ny;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<GapComponent> components;

    const double cell_area = grid.cell_width() * grid.cell_height();
    for (int j0 = 0; j0 < ny; ++j0)
        for (int i0 = 0; i0 < nx; ++i0) {
            const std::size_t k0 = static_cast<std::size_t>(j0) * nx + i0;
            if (grid.cells[k0] != CellClass::gap || seen[k0]) continue;

            GapComponent comp;
            double x_lo = grid.bbox.x_max, x_hi = grid.bbox.x_min;
            double y_lo = grid.bbox.y_max, y_hi = grid.bbox.y_min;
            std::deque<std::pair<int, int>> queue{{i0, j0}};
            seen[k0] = 1;
            while (!queue.empty()) {
                const auto [i, j] = queue.front();
                queue.pop_front();
                comp.cells.emplace_back(i, j);
                const Vec2 c = grid.center(i, j);
                x_lo = std::min(x_lo, c.x - 0.5 * grid.cell_width());
                x_hi = std::max(x_hi, c.x + 0.5 * grid.cell_width());
                y_lo = std::min(y_lo, c.y - 0.5 * grid.cell_height());
                y_hi = std::max(y_hi, c.y + 0.5 * grid.cell_height());
                const auto visit = [&](int ii, int jj) {
                    if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) return;
                    const std::size_t kk = static_cast<std::size_t>(jj) * nx + ii;
                    if (grid.cells[kk] == CellClass::gap && !seen[kk]) {
                        seen[kk] = 1;
                        queue.emplace_back(ii, jj);
                    }
                };
                visit(i - 1, j);
                visit(i + 1, j);
                visit(i, j - 1);
                visit(i, j + 1);
            }
            comp.area = cell_area * static_cast<double>(comp.cells.size());
            comp.bounds = {x_lo, x_hi, y_lo, y_hi};
            components.push_back(std::move(comp));
        }

    std::stable_sort(components.begin(), components.end(),
                     [](const GapComponent& a, const GapComponent& b) { return a.area > b.area; });
    return components;
}

}  // namespace charflow::geom
