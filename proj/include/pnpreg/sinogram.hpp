#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pnpreg/vec.hpp"

namespace pnp {

// Projection data plus the bookkeeping the solvers and the model-selection
// rules need: which rows are fitted, which are held out, and the realized
// noise magnitude delta = ||b_noisy - b_clean||_2.
struct Sinogram {
    std::size_t n_angles = 0;
    std::size_t n_rays = 0;
    Vector data;
    std::vector<std::size_t> fit_indices;
    std::vector<std::size_t> cv_indices;
    double noise_level_delta = 0.0;
};

// Adds seeded Gaussian noise scaled so that ||noise|| / ||b|| equals
// noise_target exactly; records delta = ||noise||. b must be nonzero
// when noise_target > 0.
Sinogram add_noise(const Vector& b, double noise_target, std::uint64_t seed);

// Holds out round(fraction * m) rows (round half up), drawn without
// replacement with the given seed; both index sets come back sorted.
// fraction = 0 leaves every row in the fit set.
Sinogram split_cv(Sinogram s, double fraction, std::uint64_t seed);

// x restricted to the given (sorted) index positions.
Vector gather(const Vector& x, const std::vector<std::size_t>& indices);

}  // namespace pnp
