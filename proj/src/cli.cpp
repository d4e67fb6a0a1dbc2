#include "charflow/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "charflow/cauchy.hpp"
#include "charflow/corpus.hpp"
#include "charflow/errors.hpp"
#include "charflow/family.hpp"
#include "charflow/geometry.hpp"
#include "charflow/inverse.hpp"
#include "charflow/svg.hpp"

namespace charflow::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

// ---- small CSV writer ------------------------------------------------------

class Csv {
public:
    explicit Csv(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) raise(errc::io_error, "cannot open '" + path + "' for writing");
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

// ---- config plumbing -------------------------------------------------------

num::Tolerance tolerance_of(const RunConfig& cfg) { return {cfg.tol, cfg.tol, 400}; }

json resolved_config(const RunConfig& cfg) {
    json j;
    j["mode"] = cfg.mode;
    if (cfg.example) j["example"] = *cfg.example;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    if (cfg.tau) j["tau"] = *cfg.tau;
    if (cfg.nu) j["nu"] = *cfg.nu;
    if (cfg.phi1) j["phi1"] = *cfg.phi1;
    if (cfg.phi2) j["phi2"] = *cfg.phi2;
    j["form"] = cfg.form;
    if (cfg.support) j["support"] = {cfg.support->first, cfg.support->second};
    if (cfg.at) j["at"] = {cfg.at->first, cfg.at->second};
    if (!cfg.c_values.empty()) j["c_values"] = cfg.c_values;
    if (cfg.c_range) j["c_range"] = {cfg.c_range->first, cfg.c_range->second};
    if (cfg.bbox) j["bbox"] = {cfg.bbox->x_min, cfg.bbox->x_max, cfg.bbox->y_min, cfg.bbox->y_max};
    j["grid"] = {cfg.grid_nx, cfg.grid_ny};
    j["samples"] = cfg.samples;
    if (cfg.scan) j["scan"] = *cfg.scan;
    if (cfg.norm) j["norm"] = {cfg.norm->first, cfg.norm->second};
    j["tol"] = cfg.tol;
    if (cfg.output) j["output"] = *cfg.output;
    if (cfg.svg_path) j["svg"] = *cfg.svg_path;
    return j;
}

struct ResolvedFamilies {
    inverse::CharacteristicFamily fam1;
    inverse::CharacteristicFamily fam2;
    num::Bracket support{-1.0, 1.0};
    int subdivisions = 256;
    std::optional<corpus::ExampleBundle> bundle;
};

inverse::FamilyForm parse_form(const std::string& form) {
    if (form == "y_of_x") return inverse::FamilyForm::y_of_x;
    if (form == "x_of_y") return inverse::FamilyForm::x_of_y;
    if (form == "polar") return inverse::FamilyForm::polar_implicit;
    raise(errc::bad_parameter, "unknown family form '" + form + "'");
}

ResolvedFamilies resolve_families(const RunConfig& cfg) {
    ResolvedFamilies out;
    if (cfg.example) {
        auto bundle = corpus::get_example(*cfg.example, cfg.a, cfg.b);
        out.fam1 = bundle.fam1;
        out.fam2 = bundle.fam2;
        out.support = bundle.support;
        out.subdivisions = bundle.coverage_subdivisions;
        out.bundle = std::move(bundle);
    } else {
        if (!cfg.phi1 || !cfg.phi2)
            raise(errc::bad_parameter, "mode needs --example or both --phi1 and --phi2");
        const auto form = parse_form(cfg.form);
        const num::Bracket c_range =
            cfg.c_range ? num::Bracket{cfg.c_range->first, cfg.c_range->second}
                        : num::Bracket{-10.0, 10.0};
        out.fam1 = inverse::CharacteristicFamily::from_expression(
            form, expr::parse(*cfg.phi1), inverse::InvariantTag::first, c_range);
        out.fam2 = inverse::CharacteristicFamily::from_expression(
            form, expr::parse(*cfg.phi2), inverse::InvariantTag::second, c_range);
    }
    if (cfg.c_range) {
        out.fam1.set_c_range({cfg.c_range->first, cfg.c_range->second});
        out.fam2.set_c_range({cfg.c_range->first, cfg.c_range->second});
    }
    if (cfg.support) out.support = {cfg.support->first, cfg.support->second};
    if (cfg.scan) out.subdivisions = *cfg.scan;
    return out;
}

cauchy::InitialData resolve_initial_data(const RunConfig& cfg) {
    if (cfg.example) {
        auto bundle = corpus::get_example(*cfg.example, cfg.a, cfg.b);
        if (!bundle.initial_data)
            raise(errc::bad_parameter,
                  "preset '" + *cfg.example + "' carries no initial data for this mode");
        auto data = *bundle.initial_data;
        if (cfg.support) {
            data.a = cfg.support->first;
            data.b = cfg.support->second;
        }
        return data;
    }
    if (!cfg.tau || !cfg.nu)
        raise(errc::bad_parameter, "mode needs --example or both --tau and --nu");
    if (!cfg.support) raise(errc::bad_parameter, "mode needs --support lo,hi");
    cauchy::InitialData data;
    data.a = cfg.support->first;
    data.b = cfg.support->second;
    data.tau = expr::parse(*cfg.tau);
    data.nu = expr::parse(*cfg.nu);
    return data;
}

BBox bbox_or_default(const RunConfig& cfg, BBox fallback) {
    if (cfg.bbox) return *cfg.bbox;
    return fallback;
}

const char* family_name(inverse::InvariantTag tag) {
    return tag == inverse::InvariantTag::first ? "first" : "second";
}

// Sampled polylines of an explicit-form family curve over the bbox, split at
// evaluation faults.
std::vector<std::vector<Vec2>> family_polylines(const inverse::CharacteristicFamily& fam,
                                                double c, const BBox& bbox, int n) {
    std::vector<std::vector<Vec2>> chains;
    if (fam.form() == inverse::FamilyForm::polar_implicit) return chains;
    const bool x_free = fam.form() == inverse::FamilyForm::y_of_x;
    const double lo = x_free ? bbox.x_min : bbox.y_min;
    const double hi = x_free ? bbox.x_max : bbox.y_max;
    std::vector<Vec2> current;
    for (const double v : linspace(lo, hi, n)) {
        bool ok = true;
        double w = 0.0;
        try {
            w = fam.value(v, c);
            ok = std::isfinite(w);
        } catch (const error&) {
            ok = false;
        }
        if (!ok) {
            if (current.size() > 1) chains.push_back(std::move(current));
            current.clear();
            continue;
        }
        current.push_back(x_free ? Vec2{v, w} : Vec2{w, v});
    }
    if (current.size() > 1) chains.push_back(std::move(current));
    return chains;
}

// ---- modes -----------------------------------------------------------------

int run_cauchy(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.at) raise(errc::bad_parameter, "cauchy mode needs --at x,y");
    const auto data = resolve_initial_data(cfg);
    const auto tol = tolerance_of(cfg);
    const cauchy::ImplicitSolution sol(data, tol);
    const double u = sol.solve_u(cfg.at->first, cfg.at->second, tol);
    std::ostringstream os;
    os.precision(12);
    os << u;
    out << "u = " << os.str() << "\n";
    return 0;
}

int run_trace(const RunConfig& cfg, std::ostream& out) {
    const auto data = resolve_initial_data(cfg);
    const auto tol = tolerance_of(cfg);
    const cauchy::ImplicitSolution sol(data, tol);

    std::vector<double> cs = cfg.c_values;
    if (cs.empty()) cs = linspace(data.a, data.b, 9);
    const double span = sol.tau_range().width();
    const BBox bbox = bbox_or_default(
        cfg, {data.a - 0.6 * span, data.b + 0.6 * span, -0.5 * span, 0.5 * span});
    const int n_samples = std::max(2, cfg.samples);
    const auto ys = linspace(bbox.y_min, bbox.y_max, n_samples);

    std::vector<cauchy::CharacteristicCurve> curves;
    for (const double c : cs) {
        curves.push_back(sol.trace_first(c, ys));
        curves.push_back(sol.trace_second(c, ys));
    }

    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"family", "c", "x", "y", "u"});
        for (const auto& curve : curves) {
            const char* name = curve.family == cauchy::Family::first ? "first" : "second";
            for (std::size_t i = 0; i < curve.points.size(); ++i)
                csv.row({name, fmt(curve.c), fmt(curve.points[i].x), fmt(curve.points[i].y),
                         fmt(curve.u_values[i])});
        }
    }

    if (cfg.svg_path) {
        svg::Plot plot(bbox);
        for (const auto& curve : curves)
            plot.polyline(curve.points,
                          curve.family == cauchy::Family::first ? "#1f77b4" : "#2ca02c");
        // envelope of the traced families, drawn distinctly
        const auto fam1 =
            inverse::CharacteristicFamily::from_solution(sol, cauchy::Family::first);
        const auto env = geom::envelope_discriminant(fam1, linspace(data.a, data.b, 65),
                                                     {bbox.y_min, bbox.y_max}, tol);
        plot.dots(env.points, "#d62728", 2.0);
        plot.write(*cfg.svg_path);
    }

    out << "traced " << curves.size() << " curves\n";
    return 0;
}

int run_envelope(const RunConfig& cfg, std::ostream& out) {
    const auto fams = resolve_families(cfg);
    const auto tol = tolerance_of(cfg);
    const BBox bbox = bbox_or_default(cfg, {-2.0, 2.0, -2.0, 2.0});

    std::vector<double> cs = cfg.c_values;
    if (cs.empty()) cs = linspace(fams.fam1.c_range().lo, fams.fam1.c_range().hi, 65);

    auto v_range_of = [&](const inverse::CharacteristicFamily& fam) -> num::Bracket {
        if (fam.form() == inverse::FamilyForm::y_of_x) return {bbox.x_min, bbox.x_max};
        return {bbox.y_min, bbox.y_max};
    };
    const auto env1 = geom::envelope_discriminant(fams.fam1, cs, v_range_of(fams.fam1), tol);
    const auto env2 = geom::envelope_discriminant(fams.fam2, cs, v_range_of(fams.fam2), tol);

    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"family", "c", "x", "y"});
        for (const auto* env : {&env1, &env2}) {
            for (std::size_t i = 0; i < env->points.size(); ++i)
                csv.row({family_name(env->family), fmt(env->params[i]), fmt(env->points[i].x),
                         fmt(env->points[i].y)});
        }
    }

    if (cfg.svg_path) {
        svg::Plot plot(bbox);
        for (const double c : cs) {
            for (const auto& chain : family_polylines(fams.fam1, c, bbox, 257))
                plot.polyline(chain, "#1f77b4");
            for (const auto& chain : family_polylines(fams.fam2, c, bbox, 257))
                plot.polyline(chain, "#2ca02c");
        }
        plot.dots(env1.points, "#d62728", 2.0);
        plot.dots(env2.points, "#ff7f0e", 2.0);
        plot.write(*cfg.svg_path);
    }

    out << "envelope points: " << env1.points.size() << " (first family), "
        << env2.points.size() << " (second family)\n";
    return 0;
}

int run_degeneration(const RunConfig& cfg, std::ostream& out) {
    const auto fams = resolve_families(cfg);
    const BBox bbox = bbox_or_default(cfg, {-2.0, 2.0, -2.0, 2.0});
    inverse::ScanOptions scan;
    scan.subdivisions = fams.subdivisions;
    scan.tol = tolerance_of(cfg);

    const auto s1 = geom::slope_field_from_family(fams.fam1, scan);
    const auto s2 = geom::slope_field_from_family(fams.fam2, scan);
    const auto points = geom::degeneration_locus(s1, s2, bbox, cfg.grid_nx, cfg.grid_ny);

    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"x", "y"});
        for (const auto& p : points) csv.row({fmt(p.x), fmt(p.y)});
    }
    if (cfg.svg_path) {
        svg::Plot plot(bbox);
        plot.dots(points, "#d62728", 1.5);
        plot.write(*cfg.svg_path);
    }

    json report;
    report["config"] = resolved_config(cfg);
    report["locus_points"] = points.size();
    out << report.dump(2) << "\n";
    return 0;
}

int run_domain(const RunConfig& cfg, std::ostream& out) {
    const auto fams = resolve_families(cfg);
    const BBox bbox = bbox_or_default(cfg, {-2.0, 2.0, -2.0, 2.0});
    inverse::ScanOptions scan;
    scan.subdivisions = fams.subdivisions;
    scan.tol = tolerance_of(cfg);

    geom::SupportTrace trace;
    if (fams.fam1.form() == inverse::FamilyForm::polar_implicit) {
        trace.kind = inverse::SupportPoint::Kind::circle;
    } else {
        trace.kind = inverse::SupportPoint::Kind::line;
        trace.lo = fams.support.lo;
        trace.hi = fams.support.hi;
    }

    const auto grid =
        geom::coverage_mask(fams.fam1, fams.fam2, trace, bbox, cfg.grid_nx, cfg.grid_ny, scan);
    const auto gaps = geom::find_gaps(grid);

    std::size_t covered = 0, exterior = 0, gap_cells = 0;
    for (const auto c : grid.cells) {
        if (c == geom::CellClass::covered) ++covered;
        else if (c == geom::CellClass::exterior_uncovered) ++exterior;
        else ++gap_cells;
    }

    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"i", "j", "x", "y", "class"});
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const Vec2 p = grid.center(i, j);
                const auto cls = grid.at(i, j);
                const char* name = cls == geom::CellClass::covered ? "covered"
                                   : cls == geom::CellClass::exterior_uncovered
                                       ? "exterior_uncovered"
                                       : "gap";
                csv.row({std::to_string(i), std::to_string(j), fmt(p.x), fmt(p.y), name});
            }
    }

    if (cfg.svg_path) {
        svg::Plot plot(bbox);
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i)
                if (grid.at(i, j) == geom::CellClass::gap) {
                    const Vec2 p = grid.center(i, j);
                    plot.cell(p.x - 0.5 * grid.cell_width(), p.x + 0.5 * grid.cell_width(),
                              p.y - 0.5 * grid.cell_height(), p.y + 0.5 * grid.cell_height(),
                              "#d62728");
                }
        if (trace.kind == inverse::SupportPoint::Kind::line) {
            plot.polyline({{trace.lo, 0.0}, {trace.hi, 0.0}}, "#000000", 2.0);
        } else {
            std::vector<Vec2> circle;
            for (const double th : linspace(0.0, 2.0 * M_PI, 181))
                circle.push_back({std::cos(th), std::sin(th)});
            plot.polyline(circle, "#000000", 2.0);
        }
        plot.write(*cfg.svg_path);
    }

    json report;
    report["config"] = resolved_config(cfg);
    report["grid"] = {grid.nx, grid.ny};
    report["covered_cells"] = covered;
    report["exterior_uncovered_cells"] = exterior;
    report["gap_cells"] = gap_cells;
    report["gap_components"] = json::array();
    for (const auto& g : gaps) {
        report["gap_components"].push_back(
            {{"cells", g.cells.size()},
             {"area", g.area},
             {"bbox", {g.bounds.x_min, g.bounds.x_max, g.bounds.y_min, g.bounds.y_max}}});
    }
    out << report.dump(2) << "\n";
    return 0;
}

int run_inverse_line(const RunConfig& cfg, std::ostream& out) {
    const auto fams = resolve_families(cfg);
    const auto norm = cfg.norm.value_or(std::make_pair(0.0, 0.0));
    inverse::LineRecoveryOptions opt;
    opt.scan.subdivisions = fams.subdivisions;
    opt.scan.tol = tolerance_of(cfg);

    const auto recovered = inverse::recover_line(fams.fam1, fams.fam2, fams.support,
                                                 std::max(2, cfg.samples),
                                                 {norm.first, norm.second}, opt);
    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"x", "tau_prime", "nu", "tau"});
        for (const auto& s : recovered.samples)
            csv.row({fmt(s.s), fmt(s.u_x), fmt(s.u_y), fmt(s.u)});
    }
    out << "recovered " << recovered.samples.size() << " samples on y = 0\n";
    return 0;
}

int run_inverse_circle(const RunConfig& cfg, std::ostream& out) {
    const auto fams = resolve_families(cfg);
    const auto norm = cfg.norm.value_or(std::make_pair(0.5 * M_PI, 0.0));
    inverse::CircleRecoveryOptions opt;
    opt.scan.subdivisions = fams.subdivisions;
    opt.scan.tol = tolerance_of(cfg);

    const int n = std::max(2, cfg.samples);
    const auto thetas =
        linspace(opt.node_exclusion + 1e-6, 2.0 * M_PI - opt.node_exclusion - 1e-6, n);
    const auto recovered = inverse::recover_circle(fams.fam1, fams.fam2, thetas,
                                                   {norm.first, norm.second}, opt);
    if (cfg.output) {
        Csv csv(*cfg.output);
        csv.header({"theta", "u_x", "u_y", "u_theta", "u_r", "u"});
        for (const auto& s : recovered.samples)
            csv.row({fmt(s.s), fmt(s.u_x), fmt(s.u_y), fmt(s.u_theta), fmt(s.u_r), fmt(s.u)});
    }
    out << "recovered " << recovered.samples.size() << " samples on the unit circle\n";
    return 0;
}

}  // namespace

RunConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        raise(errc::syntax_error, "config '" + path + "': " + e.what());
    }

    RunConfig cfg;
    auto pair_of = [&](const json& v, const char* key) -> std::pair<double, double> {
        if (!v.is_array() || v.size() != 2)
            raise(errc::bad_parameter, std::string("config key '") + key +
                                           "' must be an array of two numbers");
        return {v[0].get<double>(), v[1].get<double>()};
    };
    try {
        if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
        if (j.contains("example")) cfg.example = j["example"].get<std::string>();
        if (j.contains("a")) cfg.a = j["a"].get<double>();
        if (j.contains("b")) cfg.b = j["b"].get<double>();
        if (j.contains("tau")) cfg.tau = j["tau"].get<std::string>();
        if (j.contains("nu")) cfg.nu = j["nu"].get<std::string>();
        if (j.contains("phi1")) cfg.phi1 = j["phi1"].get<std::string>();
        if (j.contains("phi2")) cfg.phi2 = j["phi2"].get<std::string>();
        if (j.contains("form")) cfg.form = j["form"].get<std::string>();
        if (j.contains("support")) cfg.support = pair_of(j["support"], "support");
        if (j.contains("at")) cfg.at = pair_of(j["at"], "at");
        if (j.contains("c_values")) cfg.c_values = j["c_values"].get<std::vector<double>>();
        if (j.contains("c_range")) cfg.c_range = pair_of(j["c_range"], "c_range");
        if (j.contains("bbox")) {
            const auto& v = j["bbox"];
            if (!v.is_array() || v.size() != 4)
                raise(errc::bad_parameter, "config key 'bbox' must be [x0, x1, y0, y1]");
            cfg.bbox = BBox{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                            v[3].get<double>()};
        }
        if (j.contains("grid")) {
            const auto& v = j["grid"];
            if (!v.is_array() || v.size() != 2)
                raise(errc::bad_parameter, "config key 'grid' must be [nx, ny]");
            cfg.grid_nx = v[0].get<int>();
            cfg.grid_ny = v[1].get<int>();
        }
        if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
        if (j.contains("scan")) cfg.scan = j["scan"].get<int>();
        if (j.contains("norm")) cfg.norm = pair_of(j["norm"], "norm");
        if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
        if (j.contains("output")) cfg.output = j["output"].get<std::string>();
        if (j.contains("svg")) cfg.svg_path = j["svg"].get<std::string>();
        if (j.contains("json_errors")) cfg.json_errors = j["json_errors"].get<bool>();
    } catch (const json::exception& e) {
        raise(errc::bad_parameter, "config '" + path + "': " + e.what());
    }
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.mode == "cauchy") return run_cauchy(cfg, out);
        if (cfg.mode == "trace") return run_trace(cfg, out);
        if (cfg.mode == "envelope") return run_envelope(cfg, out);
        if (cfg.mode == "degeneration") return run_degeneration(cfg, out);
        if (cfg.mode == "domain") return run_domain(cfg, out);
        if (cfg.mode == "inverse-line") return run_inverse_line(cfg, out);
        if (cfg.mode == "inverse-circle") return run_inverse_circle(cfg, out);
        raise(errc::bad_parameter, "unknown mode '" + cfg.mode + "'");
    } catch (const error& e) {
        if (cfg.json_errors) {
            json j;
            j["error"] = {{"category", errc_name(e.code())}, {"message", e.what()}};
            if (e.offset) j["error"]["offset"] = *e.offset;
            err << j.dump() << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return is_math_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        if (cfg.json_errors) {
            json j;
            j["error"] = {{"category", "internal"}, {"message", e.what()}};
            err << j.dump() << "\n";
        } else {
            err << "error: " << e.what() << "\n";
        }
        return 1;
    }
}

namespace {

const char* kUsage = R"(charflow — characteristic-curve solver for the Dubreil-Jacotin equation

usage: charflow <mode> [flags]

modes:
  cauchy          solve u(x, y) from initial data (--at x,y)
  trace           trace characteristic curves of both families
  envelope        discriminant envelopes of a family pair
  degeneration    parabolic-degeneration locus of a family pair
  domain          coverage mask, domain classification, and gap report
  inverse-line    recover tau', nu, tau on y = 0 from a family pair
  inverse-circle  recover u_x, u_y, u_theta, u_r, u on the unit circle

flags:
  --config path         JSON config document (flags override it)
  --example name        preset: example1 | example2 | example3
  --a v, --b v          preset parameters (a > b > 0)
  --tau expr, --nu expr initial data for cauchy/trace
  --phi1 expr, --phi2 expr   family pair (first: u+y const, second: u-y const)
  --form f              y_of_x | x_of_y | polar
  --support lo,hi       data support interval on y = 0
  --at x,y              evaluation point (cauchy)
  --c-values v1,v2,...  explicit curve parameters
  --c-range lo,hi       family parameter range
  --bbox x0,x1,y0,y1    bounding box for grids and plots
  --grid nx,ny          grid resolution
  --samples n           sample count (traces, recovery grids)
  --scan n              c-scan subdivisions (coverage, slope fields)
  --norm s,u            normalization point and value
  --tol t               numeric tolerance
  -o path               CSV output path
  --svg path            SVG output path
  --json-errors         machine-readable errors on stderr
)";

double parse_double(const std::string& s, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        raise(errc::bad_parameter, flag + ": '" + s + "' is not a number");
    }
}

int parse_int(const std::string& s, const std::string& flag) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        raise(errc::bad_parameter, flag + ": '" + s + "' is not an integer");
    }
}

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, ','))
        out.push_back(parse_double(token, flag));
    if (out.empty()) raise(errc::bad_parameter, flag + ": empty list");
    return out;
}

std::pair<double, double> parse_pair(const std::string& s, const std::string& flag) {
    const auto v = parse_list(s, flag);
    if (v.size() != 2) raise(errc::bad_parameter, flag + ": expected two comma-separated values");
    return {v[0], v[1]};
}

}  // namespace

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << kUsage;
        return args.empty() ? 1 : 0;
    }

    // Peek at --json-errors early so even flag-parse failures honor it.
    const bool json_errors =
        std::find(args.begin(), args.end(), "--json-errors") != args.end();

    try {
        RunConfig cfg;
        std::size_t i = 0;
        if (!args[0].empty() && args[0][0] != '-') {
            cfg.mode = args[0];
            i = 1;
        }

        // First pass: an optional config document supplies the baseline.
        for (std::size_t k = i; k + 1 < args.size(); ++k) {
            if (args[k] == "--config") {
                auto file_cfg = config_from_json_file(args[k + 1]);
                if (!cfg.mode.empty()) file_cfg.mode = cfg.mode;
                cfg = std::move(file_cfg);
                break;
            }
        }
        cfg.json_errors = cfg.json_errors || json_errors;

        auto need_value = [&](std::size_t& k, const std::string& flag) -> std::string {
            if (k + 1 >= args.size())
                raise(errc::bad_parameter, flag + ": missing value");
            return args[++k];
        };

        for (std::size_t k = i; k < args.size(); ++k) {
            const std::string& flag = args[k];
            if (flag == "--config") {
                ++k;  // consumed in the first pass
            } else if (flag == "--example") {
                cfg.example = need_value(k, flag);
            } else if (flag == "--a") {
                cfg.a = parse_double(need_value(k, flag), flag);
            } else if (flag == "--b") {
                cfg.b = parse_double(need_value(k, flag), flag);
            } else if (flag == "--tau") {
                cfg.tau = need_value(k, flag);
            } else if (flag == "--nu") {
                cfg.nu = need_value(k, flag);
            } else if (flag == "--phi1") {
                cfg.phi1 = need_value(k, flag);
            } else if (flag == "--phi2") {
                cfg.phi2 = need_value(k, flag);
            } else if (flag == "--form") {
                cfg.form = need_value(k, flag);
            } else if (flag == "--support") {
                cfg.support = parse_pair(need_value(k, flag), flag);
            } else if (flag == "--at") {
                cfg.at = parse_pair(need_value(k, flag), flag);
            } else if (flag == "--c-values") {
                cfg.c_values = parse_list(need_value(k, flag), flag);
            } else if (flag == "--c-range") {
                cfg.c_range = parse_pair(need_value(k, flag), flag);
            } else if (flag == "--bbox") {
                const auto v = parse_list(need_value(k, flag), flag);
                if (v.size() != 4)
                    raise(errc::bad_parameter, "--bbox: expected x0,x1,y0,y1");
                cfg.bbox = BBox{v[0], v[1], v[2], v[3]};
            } else if (flag == "--grid") {
                const auto v = parse_list(need_value(k, flag), flag);
                if (v.size() != 2) raise(errc::bad_parameter, "--grid: expected nx,ny");
                cfg.grid_nx = static_cast<int>(v[0]);
                cfg.grid_ny = static_cast<int>(v[1]);
            } else if (flag == "--samples") {
                cfg.samples = parse_int(need_value(k, flag), flag);
            } else if (flag == "--scan") {
                cfg.scan = parse_int(need_value(k, flag), flag);
            } else if (flag == "--norm") {
                cfg.norm = parse_pair(need_value(k, flag), flag);
            } else if (flag == "--tol") {
                cfg.tol = parse_double(need_value(k, flag), flag);
            } else if (flag == "-o" || flag == "--output") {
                cfg.output = need_value(k, flag);
            } else if (flag == "--svg") {
                cfg.svg_path = need_value(k, flag);
            } else if (flag == "--json-errors") {
                cfg.json_errors = true;
            } else {
                raise(errc::bad_parameter, "unknown flag '" + flag + "'");
            }
        }

        if (cfg.mode.empty())
            raise(errc::bad_parameter, "no mode given (see charflow --help)");
        return run(cfg, std::cout, std::cerr);
    } catch (const error& e) {
        if (json_errors) {
            json j;
            j["error"] = {{"category", errc_name(e.code())}, {"message", e.what()}};
            std::cerr << j.dump() << "\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return is_math_error(e.code()) ? 2 : 1;
    }
}

}  // namespace charflow::cli
