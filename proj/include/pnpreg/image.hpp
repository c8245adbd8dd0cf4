#pragma once

#include <cstddef>

#include "pnpreg/vec.hpp"

namespace pnp {

// Dense 2-D image, row-major. data[row * width + col].
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    Vector data;

    Image() = default;
    Image(std::size_t w, std::size_t h, double fill = 0.0)
        : width(w), height(h), data(w * h, fill) {}
    Image(std::size_t w, std::size_t h, Vector values)
        : width(w), height(h), data(std::move(values)) {}

    std::size_t size() const { return data.size(); }
    double& at(std::size_t row, std::size_t col) { return data[row * width + col]; }
    double at(std::size_t row, std::size_t col) const { return data[row * width + col]; }
};

inline Image like(const Image& ref, Vector values) {
    return Image(ref.width, ref.height, std::move(values));
}

}  // namespace pnp
