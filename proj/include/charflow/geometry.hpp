#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "charflow/cauchy.hpp"
#include "charflow/family.hpp"
#include "charflow/types.hpp"

namespace charflow::geom {

enum class EnvelopeKind { discriminant, boundary };

struct Envelope {
    inverse::InvariantTag family;
    EnvelopeKind kind = EnvelopeKind::discriminant;
    std::vector<Vec2> points;
    std::vector<double> params;  // c resolved per point (discriminant kind)
};

// Discriminant envelope: for each c, the free variable is root-found where
// d phi / d c vanishes. An empty result is a valid outcome (translate
// families have no discriminant envelope).
Envelope envelope_discriminant(const inverse::CharacteristicFamily& fam,
                               const std::vector<double>& c_grid, num::Bracket v_range,
                               const num::Tolerance& tol = {}, int scan = 128);

// Slope field: tangent direction of the family member through a plane point;
// nullopt where no curve passes or evaluation faults.
using SlopeField = std::function<std::optional<Direction>(double x, double y)>;

SlopeField slope_field_from_family(const inverse::CharacteristicFamily& fam,
                                   const inverse::ScanOptions& opt = {});

// Both characteristic slope fields of a forward solution, from central finite
// differences of solve_u. Undefined wherever the solution is.
std::pair<SlopeField, SlopeField> slope_fields_from_solution(
    const cauchy::ImplicitSolution& sol, double fd_step = 1e-5);

struct LocusOptions {
    double tol = 1e-4;          // |normalized cross| counted as coincident
    int boundary_bisections = 60;
};

// Points where the two direction fields are parallel (normalized cross test):
// sign changes along grid edges are bisected to the zero, and edges crossing
// the fields' definedness boundary are bisected to the boundary, emitted when
// the cross there has decayed below tol.
std::vector<Vec2> degeneration_locus(const SlopeField& s1, const SlopeField& s2,
                                     const BBox& bbox, int nx, int ny,
                                     const LocusOptions& opt = {});

enum class CellClass : std::uint8_t { covered, exterior_uncovered, gap };

struct SupportTrace {
    inverse::SupportPoint::Kind kind;
    double lo = 0.0, hi = 0.0;  // interval on y = 0 (line support)
};

struct DomainGrid {
    BBox bbox;
    int nx = 0, ny = 0;
    std::vector<CellClass> cells;  // row-major, j * nx + i
    SupportTrace support;

    CellClass at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i]; }
    double cell_width() const { return (bbox.x_max - bbox.x_min) / nx; }
    double cell_height() const { return (bbox.y_max - bbox.y_min) / ny; }
    Vec2 center(int i, int j) const {
        return {bbox.x_min + (i + 0.5) * cell_width(), bbox.y_min + (j + 0.5) * cell_height()};
    }
};

// A cell is covered when some parameter in c_range puts a curve of each
// family through its center. Uncovered cells reachable from the bbox
// boundary are exterior; enclosed ones are gaps (4-connected flood fill).
DomainGrid coverage_mask(const inverse::CharacteristicFamily& fam1,
                         const inverse::CharacteristicFamily& fam2, SupportTrace support,
                         const BBox& bbox, int nx, int ny,
                         const inverse::ScanOptions& opt = {});

struct GapComponent {
    std::vector<std::pair<int, int>> cells;  // (i, j)
    double area = 0.0;
    BBox bounds{0, 1, 0, 1};
};

// 4-connected components of gap cells, largest area first.
std::vector<GapComponent> find_gaps(const DomainGrid& grid);

}  // namespace charflow::geom
