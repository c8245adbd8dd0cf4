#pragma once

#include <string>

#include "pnpreg/image.hpp"
#include "pnpreg/sinogram.hpp"

namespace pnp {

// Shortest representation that round-trips a double exactly ("%.17g").
std::string format_g17(double v);

// CSV layout: a header line naming the two dimensions, the dimensions
// themselves, then one value per line in storage order. LF line endings.
void write_image_csv(const Image& img, const std::string& path);
Image read_image_csv(const std::string& path);

void write_sinogram_csv(const Sinogram& s, const std::string& path);
Sinogram read_sinogram_csv(const std::string& path);

// Raw layout: 16-byte header of two little-endian uint64 dimensions,
// then the values as little-endian binary float64. Bit-exact round trip.
void write_image_raw(const Image& img, const std::string& path);
Image read_image_raw(const std::string& path);

void write_sinogram_raw(const Sinogram& s, const std::string& path);
Sinogram read_sinogram_raw(const std::string& path);

}  // namespace pnp
