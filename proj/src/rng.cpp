#include "pnpreg/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pnp {

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    RngEngine eng = make_engine(seed);
    // Partial Fisher-Yates: after i swaps, pool[0..i) is a uniform k-subset prefix.
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(eng)]);
    }
    std::vector<std::size_t> out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pnp
