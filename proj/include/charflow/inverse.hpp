#pragma once

#include <utility>
#include <vector>

#include "charflow/family.hpp"

namespace charflow::inverse {

// One recovered sample. On the line support s is the abscissa and the
// (tau_prime, nu, integral) columns hold tau', nu, tau; on the circle s is
// the polar angle and the columns hold u_theta, u_r, u, with u_x/u_y kept
// alongside.
struct RecoveredSample {
    double s;
    double u_x = 0.0;      // = tau' on the line
    double u_y = 0.0;      // = nu on the line
    double u_theta = 0.0;  // circle only
    double u_r = 0.0;      // circle only
    double u = 0.0;        // cumulative integral from the normalization point
};

struct RecoveredData {
    SupportPoint::Kind support;
    std::vector<RecoveredSample> samples;
    double norm_s = 0.0;
    double norm_u = 0.0;
};

// First derivatives of the solution at a support point of y = 0, from the two
// characteristic directions (homogeneous pairs, scale-invariant):
//   tau' = -2 dy1 dy2 / cross,  nu = (dx1 dy2 + dx2 dy1) / cross,
// cross = dx1 dy2 - dx2 dy1. Parallel directions mean parabolic degeneration.
std::pair<double, double> recover_pointwise(const Direction& m1, const Direction& m2);

// The same 2x2 solve read as (u_x, u_y); on the unit circle both families
// meet the support transversally and the formulas are identical.
std::pair<double, double> derivatives_from_directions(const Direction& m1, const Direction& m2);

struct LineRecoveryOptions {
    ScanOptions scan = {};
};

// Theorem 2 on y = 0: sample (tau', nu) on a uniform n-point grid over the
// interval and integrate tau' through a piecewise-cubic interpolant, anchored
// by tau(norm_x) = norm_u.
RecoveredData recover_line(const CharacteristicFamily& fam1, const CharacteristicFamily& fam2,
                           const num::Bracket& interval, int n,
                           std::pair<double, double> norm,
                           const LineRecoveryOptions& opt = {});

struct CircleRecoveryOptions {
    ScanOptions scan = {};
    double node_exclusion = 1e-3;  // band around theta = 0 (mod 2 pi)
};

// Circle-support recovery: u_x, u_y from the family slopes at (1, theta),
// then u_theta = -u_x sin + u_y cos, u_r = u_x cos + u_y sin, and
// u(1, theta) = norm_u + integral of u_theta from norm_theta.
RecoveredData recover_circle(const CharacteristicFamily& fam1,
                             const CharacteristicFamily& fam2,
                             const std::vector<double>& theta_grid,
                             std::pair<double, double> norm,
                             const CircleRecoveryOptions& opt = {});

}  // namespace charflow::inverse
