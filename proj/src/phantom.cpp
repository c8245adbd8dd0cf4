#include "pnpreg/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pnp {

const std::vector<PhantomEllipse>& head_phantom_ellipses() {
    // intensity, semi_x, semi_y, center_x, center_y, rotation_deg
    static const std::vector<PhantomEllipse> table = {
        {1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
        {-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
        {-0.02, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
        {-0.02, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
        {0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
        {0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
        {0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
        {0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
        {0.01, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
        {0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
    };
    return table;
}

Image render_phantom(std::size_t n, const std::vector<PhantomEllipse>& ellipses,
                     double lo, double hi) {
    if (n < 16) throw std::invalid_argument("render_phantom: grid size must be >= 16");
    if (!(lo < hi)) throw std::invalid_argument("render_phantom: need lo < hi");

    Image img(n, n, 0.0);
    const double scale = 2.0 / static_cast<double>(n);
    const double half = static_cast<double>(n) / 2.0;
    for (const PhantomEllipse& e : ellipses) {
        const double phi = e.rotation_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double inv_a2 = 1.0 / (e.semi_x * e.semi_x);
        const double inv_b2 = 1.0 / (e.semi_y * e.semi_y);
        for (std::size_t row = 0; row < n; ++row) {
            const double v = (half - static_cast<double>(row) - 0.5) * scale;
            for (std::size_t col = 0; col < n; ++col) {
                const double u = (static_cast<double>(col) + 0.5 - half) * scale;
                const double dx = u - e.center_x;
                const double dy = v - e.center_y;
                const double xr = dx * c + dy * s;
                const double yr = -dx * s + dy * c;
                if (xr * xr * inv_a2 + yr * yr * inv_b2 <= 1.0)
                    img.at(row, col) += e.intensity;
            }
        }
    }

    const auto [mn_it, mx_it] = std::minmax_element(img.data.begin(), img.data.end());
    const double mn = *mn_it;
    const double mx = *mx_it;
    if (!(mx > mn))
        throw std::invalid_argument("render_phantom: constant image cannot be rescaled");
    const double gain = (hi - lo) / (mx - mn);
    for (double& val : img.data) val = lo + (val - mn) * gain;
    return img;
}

Image shepp_logan(std::size_t n, double lo, double hi) {
    return render_phantom(n, head_phantom_ellipses(), lo, hi);
}

}  // namespace pnp
