#pragma once

#include <cstddef>
#include <vector>

#include "pnpreg/sparse_operator.hpp"

namespace pnp {

enum class GeometryKind { parallel, fan_curved };

// Scan description for an n-by-n image of unit pixels centered at the origin.
// Rows of the projection operator are ordered angle-major:
// row = angle_index * n_rays + ray_index.
struct Geometry {
    GeometryKind kind = GeometryKind::parallel;
    std::size_t grid_n = 0;
    std::size_t n_angles = 0;
    std::size_t n_rays = 0;  // per angle
    double angle_span_deg = 180.0;
    double source_radius = 0.0;    // fan only; 0 selects the default 2 * grid_n
    double detector_radius = 0.0;  // fan only; 0 selects the default 2 * grid_n
};

struct RayCell {
    std::size_t cell;  // row-major pixel index
    double length;     // intersection length in pixel units
};

// Cells crossed by the ray through `point` with direction (dir_x, dir_y)
// on the n-by-n unit-pixel grid centered at the origin (x right, y up).
// Intersections shorter than 1e-12 are dropped.
std::vector<RayCell> trace_ray(std::size_t n, double point_x, double point_y,
                               double dir_x, double dir_y);

// Sparse ray-driven projection operator; weights are intersection lengths.
SparseOperator build_radon(const Geometry& g);

}  // namespace pnp
