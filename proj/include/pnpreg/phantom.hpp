#pragma once

#include <cstddef>
#include <vector>

#include "pnpreg/image.hpp"

namespace pnp {

// One ellipse of an additive head phantom. Coordinates live in [-1,1]^2,
// x to the right, y up; rotation angle in degrees, counterclockwise.
struct PhantomEllipse {
    double intensity;
    double semi_x;
    double semi_y;
    double center_x;
    double center_y;
    double rotation_deg;
};

// The standard ten-ellipse head phantom table.
const std::vector<PhantomEllipse>& head_phantom_ellipses();

// Renders ellipses additively at pixel centers on an n-by-n grid
// (n >= 16), then rescales affinely so min(data) == lo and max(data) == hi.
Image render_phantom(std::size_t n, const std::vector<PhantomEllipse>& ellipses,
                     double lo, double hi);

// Standard head phantom on an n-by-n grid, rescaled to [lo, hi].
Image shepp_logan(std::size_t n, double lo, double hi);

}  // namespace pnp
