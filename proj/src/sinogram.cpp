#include "pnpreg/sinogram.hpp"

#include <cmath>
#include <stdexcept>

#include "pnpreg/rng.hpp"

namespace pnp {

Sinogram add_noise(const Vector& b, double noise_target, std::uint64_t seed) {
    if (noise_target < 0.0) throw std::invalid_argument("add_noise: negative noise target");
    Sinogram s;
    s.data = b;
    if (noise_target == 0.0) return s;

    const double b_norm = norm2(b);
    if (b_norm == 0.0) throw std::invalid_argument("add_noise: zero data with nonzero target");

    Vector e(b.size());
    RngEngine eng = make_engine(seed);
    fill_standard_normal(eng, e);
    const double e_norm = norm2(e);
    if (e_norm == 0.0) throw std::runtime_error("add_noise: degenerate noise draw");
    const double c = noise_target * b_norm / e_norm;
    for (std::size_t i = 0; i < b.size(); ++i) s.data[i] += c * e[i];
    s.noise_level_delta = c * e_norm;
    return s;
}

Sinogram split_cv(Sinogram s, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction >= 1.0)
        throw std::invalid_argument("split_cv: fraction must lie in [0, 1)");
    const std::size_t m = s.data.size();
    const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m) + 0.5));
    s.cv_indices = sample_without_replacement(m, k, seed);
    s.fit_indices.clear();
    s.fit_indices.reserve(m - k);
    std::size_t next_cv = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (next_cv < s.cv_indices.size() && s.cv_indices[next_cv] == i)
            ++next_cv;
        else
            s.fit_indices.push_back(i);
    }
    return s;
}

Vector gather(const Vector& x, const std::vector<std::size_t>& indices) {
    Vector out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= x.size()) throw std::invalid_argument("gather: index out of range");
        out.push_back(x[i]);
    }
    return out;
}

}  // namespace pnp
