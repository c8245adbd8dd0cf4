#include "pnpreg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pnpreg/errors.hpp"

namespace pnp {

namespace {

constexpr double kMinLength = 1e-12;

// t-values at which origin + t*dir crosses the planes coord = lo + k,
// restricted to (t0, t1).
void plane_crossings(double origin, double dir, double lo, std::size_t n_planes,
                     double t0, double t1, std::vector<double>& ts) {
    if (std::abs(dir) < 1e-300) return;
    for (std::size_t k = 0; k <= n_planes; ++k) {
        double t = (lo + static_cast<double>(k) - origin) / dir;
        if (t > t0 && t < t1) ts.push_back(t);
    }
}

}  // namespace

std::vector<RayCell> trace_ray(std::size_t n, double point_x, double point_y,
                               double dir_x, double dir_y) {
    std::vector<RayCell> cells;
    const double dn = std::sqrt(dir_x * dir_x + dir_y * dir_y);
    if (dn == 0.0) throw std::invalid_argument("trace_ray: zero direction");
    const double dx = dir_x / dn;
    const double dy = dir_y / dn;
    const double half = static_cast<double>(n) / 2.0;

    // Slab clipping against [-half, half]^2.
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 2; ++axis) {
        const double o = axis == 0 ? point_x : point_y;
        const double d = axis == 0 ? dx : dy;
        if (std::abs(d) < 1e-300) {
            if (o <= -half || o >= half) return cells;
        } else {
            double ta = (-half - o) / d;
            double tb = (half - o) / d;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
        }
    }
    if (!(t1 - t0 > kMinLength)) return cells;

    std::vector<double> ts;
    ts.push_back(t0);
    plane_crossings(point_x, dx, -half, n, t0, t1, ts);
    plane_crossings(point_y, dy, -half, n, t0, t1, ts);
    ts.push_back(t1);
    std::sort(ts.begin(), ts.end());

    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double len = ts[i + 1] - ts[i];
        if (len <= kMinLength) continue;
        const double tm = 0.5 * (ts[i] + ts[i + 1]);
        const double mx = point_x + tm * dx;
        const double my = point_y + tm * dy;
        // Midpoints are strictly interior to their pixel, so floor is safe.
        auto col = static_cast<std::ptrdiff_t>(std::floor(mx + half));
        auto row = static_cast<std::ptrdiff_t>(std::floor(half - my));
        col = std::clamp<std::ptrdiff_t>(col, 0, static_cast<std::ptrdiff_t>(n) - 1);
        row = std::clamp<std::ptrdiff_t>(row, 0, static_cast<std::ptrdiff_t>(n) - 1);
        cells.push_back({static_cast<std::size_t>(row) * n + static_cast<std::size_t>(col), len});
    }
    return cells;
}

SparseOperator build_radon(const Geometry& g) {
    if (g.grid_n < 2) throw config_error("geometry: grid size must be >= 2");
    if (g.n_angles == 0 || g.n_rays == 0)
        throw config_error("geometry: need at least one angle and one ray");
    if (!(g.angle_span_deg > 0.0)) throw config_error("geometry: angle span must be positive");

    const std::size_t n = g.grid_n;
    const double nd = static_cast<double>(n);
    const double span = g.angle_span_deg * std::numbers::pi / 180.0;
    const double cover_radius = 0.5 * nd * std::numbers::sqrt2;

    std::vector<Triplet> entries;
    bool any_hit = false;

    if (g.kind == GeometryKind::parallel) {
        const double extent = std::numbers::sqrt2 * nd;  // detector covers grid corners
        for (std::size_t i = 0; i < g.n_angles; ++i) {
            const double theta = span * static_cast<double>(i) / static_cast<double>(g.n_angles);
            const double dx = std::cos(theta);
            const double dy = std::sin(theta);
            for (std::size_t j = 0; j < g.n_rays; ++j) {
                const double offset =
                    ((static_cast<double>(j) + 0.5) / static_cast<double>(g.n_rays) - 0.5) *
                    extent;
                // Ray through offset * (unit normal), running along (dx, dy).
                const double px = -offset * dy;
                const double py = offset * dx;
                const std::size_t row = i * g.n_rays + j;
                for (const RayCell& c : trace_ray(n, px, py, dx, dy)) {
                    entries.push_back({row, c.cell, c.length});
                    any_hit = true;
                }
            }
        }
    } else {
        const double source_radius = g.source_radius > 0.0 ? g.source_radius : 2.0 * nd;
        if (source_radius <= cover_radius)
            throw config_error("geometry: fan source lies inside the image disk");
        // Equiangular fan wide enough that the extreme rays graze the disk
        // circumscribing the grid.
        const double half_fan = std::asin(cover_radius / source_radius);
        for (std::size_t i = 0; i < g.n_angles; ++i) {
            const double beta = span * static_cast<double>(i) / static_cast<double>(g.n_angles);
            const double sx = source_radius * std::cos(beta);
            const double sy = source_radius * std::sin(beta);
            for (std::size_t j = 0; j < g.n_rays; ++j) {
                const double phi =
                    ((static_cast<double>(j) + 0.5) / static_cast<double>(g.n_rays) - 0.5) * 2.0 *
                    half_fan;
                // Central ray points back at the origin; rotate it by phi.
                const double ang = beta + std::numbers::pi + phi;
                const double dx = std::cos(ang);
                const double dy = std::sin(ang);
                const std::size_t row = i * g.n_rays + j;
                for (const RayCell& c : trace_ray(n, sx, sy, dx, dy)) {
                    entries.push_back({row, c.cell, c.length});
                    any_hit = true;
                }
            }
        }
    }

    if (!any_hit) throw config_error("geometry: all rays miss the grid");
    return SparseOperator::from_triplets(g.n_angles * g.n_rays, n * n, std::move(entries));
}

}  // namespace pnp
