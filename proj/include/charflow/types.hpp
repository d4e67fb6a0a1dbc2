#pragma once

#include <cmath>

#include "charflow/errors.hpp"

namespace charflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Homogeneous direction pair (dx, dy); scale-free, so vertical and horizontal
// tangents need no special casing.
struct Direction {
    double dx = 0.0;
    double dy = 0.0;

    Direction() = default;
    Direction(double dx_, double dy_) : dx(dx_), dy(dy_) {}

    Direction normalized() const {
        const double n = std::hypot(dx, dy);
        if (n == 0.0 || !std::isfinite(n))
            raise(errc::singular_point, "direction: zero or non-finite tangent");
        return {dx / n, dy / n};
    }
};

// Signed cross product; zero iff the directions are parallel (orientation
// ignored once the inputs are normalized).
inline double cross(const Direction& a, const Direction& b) {
    return a.dx * b.dy - b.dx * a.dy;
}

struct BBox {
    double x_min, x_max, y_min, y_max;

    void validate() const {
        if (!(x_min < x_max) || !(y_min < y_max))
            raise(errc::bad_parameter, "bbox: min must be < max on both axes");
    }
};

}  // namespace charflow
