#pragma once

#include <string>
#include <vector>

#include "charflow/types.hpp"

namespace charflow::svg {

// Minimal SVG 1.1 plot: fixed 800x600 viewport, linear axes mapped from the
// bbox, one polyline per curve. Deterministic output, diff-able.
class Plot {
public:
    Plot(BBox bbox);

    void polyline(const std::vector<Vec2>& points, const std::string& stroke,
                  double width = 1.0);
    void dots(const std::vector<Vec2>& points, const std::string& fill, double radius = 1.5);
    // axis-aligned filled cell (data coordinates)
    void cell(double x_lo, double x_hi, double y_lo, double y_hi, const std::string& fill);

    std::string finish() const;
    void write(const std::string& path) const;

    static constexpr int kWidth = 800;
    static constexpr int kHeight = 600;

private:
    Vec2 map(const Vec2& p) const;

    BBox bbox_;
    std::string body_;
};

}  // namespace charflow::svg
