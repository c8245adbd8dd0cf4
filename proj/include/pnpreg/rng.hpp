#pragma once

#include <cstdint>
#include <random>

#include "pnpreg/vec.hpp"

namespace pnp {

using RngEngine = std::mt19937_64;

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(seed); }

// Fills out with independent N(0,1) draws in index order.
inline void fill_standard_normal(RngEngine& eng, Vector& out) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out) v = normal(eng);
}

// k distinct indices drawn from {0,...,n-1}, returned sorted ascending.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    std::uint64_t seed);

}  // namespace pnp
