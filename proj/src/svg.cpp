#include "charflow/svg.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace charflow::svg {

namespace {

constexpr double kMargin = 20.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

Plot::Plot(BBox bbox) : bbox_(bbox) { bbox_.validate(); }

Vec2 Plot::map(const Vec2& p) const {
    const double sx = (kWidth - 2 * kMargin) / (bbox_.x_max - bbox_.x_min);
    const double sy = (kHeight - 2 * kMargin) / (bbox_.y_max - bbox_.y_min);
    return {kMargin + (p.x - bbox_.x_min) * sx,
            kHeight - kMargin - (p.y - bbox_.y_min) * sy};
}

void Plot::polyline(const std::vector<Vec2>& points, const std::string& stroke, double width) {
    if (points.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
       << "\" points=\"";
    bool first = true;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        const Vec2 q = map(p);
        if (!first) os << ' ';
        os << fmt(q.x) << ',' << fmt(q.y);
        first = false;
    }
    os << "\"/>\n";
    body_ += os.str();
}

void Plot::dots(const std::vector<Vec2>& points, const std::string& fill, double radius) {
    std::ostringstream os;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        const Vec2 q = map(p);
        os << "<circle cx=\"" << fmt(q.x) << "\" cy=\"" << fmt(q.y) << "\" r=\"" << fmt(radius)
           << "\" fill=\"" << fill << "\"/>\n";
    }
    body_ += os.str();
}

void Plot::cell(double x_lo, double x_hi, double y_lo, double y_hi, const std::string& fill) {
    const Vec2 tl = map({x_lo, y_hi});
    const Vec2 br = map({x_hi, y_lo});
    std::ostringstream os;
    os << "<rect x=\"" << fmt(tl.x) << "\" y=\"" << fmt(tl.y) << "\" width=\""
       << fmt(br.x - tl.x) << "\" height=\"" << fmt(br.y - tl.y) << "\" fill=\"" << fill
       << "\"/>\n";
    body_ += os.str();
}

std::string Plot::finish() const {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\">\n"
       << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\""
       << fmt(kWidth - 2 * kMargin) << "\" height=\"" << fmt(kHeight - 2 * kMargin)
       << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n"
       << body_ << "</svg>\n";
    return os.str();
}

void Plot::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::io_error, "svg: cannot open '" + path + "' for writing");
    out << finish();
    if (!out) raise(errc::io_error, "svg: write to '" + path + "' failed");
}

}  // namespace charflow::svg
