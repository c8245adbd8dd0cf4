#include "pnpreg/io.hpp"

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "pnpreg/errors.hpp"

namespace pnp {

namespace {

void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64_le(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

void put_f64_le(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof bits);
    put_u64_le(out, bits);
}

double get_f64_le(const unsigned char* p) {
    std::uint64_t bits = get_u64_le(p);
    double d;
    std::memcpy(&d, &bits, sizeof d);
    return d;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string csv_text(const char* header, std::size_t d0, std::size_t d1, const Vector& data) {
    std::string out;
    out.reserve(data.size() * 20 + 64);
    out += header;
    out += '\n';
    out += std::to_string(d0);
    out += ',';
    out += std::to_string(d1);
    out += '\n';
    for (double v : data) {
        out += format_g17(v);
        out += '\n';
    }
    return out;
}

struct CsvPayload {
    std::size_t d0 = 0;
    std::size_t d1 = 0;
    Vector data;
};

CsvPayload parse_csv(const std::string& text, const char* header, const std::string& path) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw config_error(path + ": expected header '" + header + "'");
    if (!std::getline(in, line)) throw config_error(path + ": missing dimensions line");
    CsvPayload out;
    char comma = 0;
    std::istringstream dims(line);
    if (!(dims >> out.d0 >> comma >> out.d1) || comma != ',')
        throw config_error(path + ": malformed dimensions line '" + line + "'");
    out.data.reserve(out.d0 * out.d1);
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        errno = 0;
        char* end = nullptr;
        double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || (end != nullptr && *end != '\0'))
            throw config_error(path + ": line " + std::to_string(line_no) +
                               ": not a number: '" + line + "'");
        out.data.push_back(v);
    }
    if (out.data.size() != out.d0 * out.d1)
        throw config_error(path + ": expected " + std::to_string(out.d0 * out.d1) +
                           " values, found " + std::to_string(out.data.size()));
    return out;
}

std::string raw_bytes(std::size_t d0, std::size_t d1, const Vector& data) {
    std::string out;
    out.reserve(16 + data.size() * 8);
    put_u64_le(out, d0);
    put_u64_le(out, d1);
    for (double v : data) put_f64_le(out, v);
    return out;
}

CsvPayload parse_raw(const std::string& bytes, const std::string& path) {
    if (bytes.size() < 16) throw config_error(path + ": truncated header");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    CsvPayload out;
    out.d0 = get_u64_le(p);
    out.d1 = get_u64_le(p + 8);
    const std::size_t expected = out.d0 * out.d1;
    if (bytes.size() != 16 + expected * 8)
        throw config_error(path + ": size mismatch for " + std::to_string(out.d0) + "x" +
                           std::to_string(out.d1) + " payload");
    out.data.resize(expected);
    for (std::size_t i = 0; i < expected; ++i) out.data[i] = get_f64_le(p + 16 + 8 * i);
    return out;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_image_csv(const Image& img, const std::string& path) {
    write_file(path, csv_text("width,height", img.width, img.height, img.data));
}

Image read_image_csv(const std::string& path) {
    CsvPayload p = parse_csv(read_file(path), "width,height", path);
    return Image(p.d0, p.d1, std::move(p.data));
}

void write_sinogram_csv(const Sinogram& s, const std::string& path) {
    write_file(path, csv_text("angles,rays", s.n_angles, s.n_rays, s.data));
}

Sinogram read_sinogram_csv(const std::string& path) {
    CsvPayload p = parse_csv(read_file(path), "angles,rays", path);
    Sinogram s;
    s.n_angles = p.d0;
    s.n_rays = p.d1;
    s.data = std::move(p.data);
    return s;
}

void write_image_raw(const Image& img, const std::string& path) {
    write_file(path, raw_bytes(img.width, img.height, img.data));
}

Image read_image_raw(const std::string& path) {
    CsvPayload p = parse_raw(read_file(path), path);
    return Image(p.d0, p.d1, std::move(p.data));
}

void write_sinogram_raw(const Sinogram& s, const std::string& path) {
    write_file(path, raw_bytes(s.n_angles, s.n_rays, s.data));
}

Sinogram read_sinogram_raw(const std::string& path) {
    CsvPayload p = parse_raw(read_file(path), path);
    Sinogram s;
    s.n_angles = p.d0;
    s.n_rays = p.d1;
    s.data = std::move(p.data);
    return s;
}

}  // namespace pnp
