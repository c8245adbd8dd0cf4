#include "pnpreg/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace pnp {

namespace {

// Whole-sample symmetric reflection (…, x1, x0 | x0, x1, …), folded until the
// index lands inside [0, n).
std::size_t reflect(std::ptrdiff_t i, std::size_t n) {
    const auto sn = static_cast<std::ptrdiff_t>(n);
    while (i < 0 || i >= sn) {
        if (i < 0) i = -i - 1;
        if (i >= sn) i = 2 * sn - 1 - i;
    }
    return static_cast<std::size_t>(i);
}

std::vector<double> gaussian_kernel(double sigma_px) {
    const auto radius = static_cast<int>(std::ceil(4.0 * sigma_px));
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-0.5 * (k / sigma_px) * (k / sigma_px));
        w[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;  // unit sum keeps mean brightness
    return w;
}

Image gaussian_blur(const Image& x, double sigma) {
    const double sigma_px = std::clamp(50.0 * sigma, 0.3, 5.0);
    const std::vector<double> w = gaussian_kernel(sigma_px);
    const auto radius = static_cast<std::ptrdiff_t>(w.size() / 2);

    Image tmp(x.width, x.height);
    for (std::size_t r = 0; r < x.height; ++r) {
        for (std::size_t c = 0; c < x.width; ++c) {
            double s = 0.0;
            for (std::ptrdiff_t k = -radius; k <= radius; ++k)
                s += w[static_cast<std::size_t>(k + radius)] *
                     x.at(r, reflect(static_cast<std::ptrdiff_t>(c) + k, x.width));
            tmp.at(r, c) = s;
        }
    }
    Image out(x.width, x.height);
    for (std::size_t r = 0; r < x.height; ++r) {
        for (std::size_t c = 0; c < x.width; ++c) {
            double s = 0.0;
            for (std::ptrdiff_t k = -radius; k <= radius; ++k)
                s += w[static_cast<std::size_t>(k + radius)] *
                     tmp.at(reflect(static_cast<std::ptrdiff_t>(r) + k, x.height), c);
            out.at(r, c) = s;
        }
    }
    return out;
}

Image median_filter(const Image& x, int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("median filter: window must be odd and positive");
    const auto radius = static_cast<std::ptrdiff_t>(window / 2);
    Image out(x.width, x.height);
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(window) * static_cast<std::size_t>(window));
    for (std::size_t r = 0; r < x.height; ++r) {
        for (std::size_t c = 0; c < x.width; ++c) {
            buf.clear();
            for (std::ptrdiff_t dr = -radius; dr <= radius; ++dr)
                for (std::ptrdiff_t dc = -radius; dc <= radius; ++dc)
                    buf.push_back(x.at(reflect(static_cast<std::ptrdiff_t>(r) + dr, x.height),
                                       reflect(static_cast<std::ptrdiff_t>(c) + dc, x.width)));
            auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
            std::nth_element(buf.begin(), mid, buf.end());
            out.at(r, c) = *mid;
        }
    }
    return out;
}

void check_input(const Image& x) {
    if (x.width == 0 || x.height == 0 || x.data.size() != x.width * x.height)
        throw std::invalid_argument("denoise: empty or inconsistent image");
    if (!all_finite(x.data)) throw std::invalid_argument("denoise: non-finite input");
}

}  // namespace

Image tv_prox(const Image& x, double lambda, int inner_iters) {
    check_input(x);
    if (lambda < 0.0) throw std::invalid_argument("tv_prox: negative weight");
    if (inner_iters < 1) throw std::invalid_argument("tv_prox: need at least one iteration");
    if (lambda == 0.0) return x;

    const std::size_t w = x.width;
    const std::size_t h = x.height;
    Vector px(w * h, 0.0), py(w * h, 0.0);  // dual field, forward-difference layout
    Vector z(w * h);

    auto idx = [w](std::size_t r, std::size_t c) { return r * w + c; };

    for (int it = 0; it < inner_iters; ++it) {
        // z = x - lambda * div p (backward-difference divergence)
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                double d = 0.0;
                if (c < w - 1) d += px[idx(r, c)];
                if (c > 0) d -= px[idx(r, c - 1)];
                if (r < h - 1) d += py[idx(r, c)];
                if (r > 0) d -= py[idx(r - 1, c)];
                z[idx(r, c)] = x.data[idx(r, c)] - lambda * d;
            }
        }
        // Dual projected-gradient step 1/8 on forward differences of
        // z/lambda, then project onto |p| <= 1 pointwise (isotropic
        // coupling). The dual objective is ||lambda div p - x||^2, whose
        // gradient is -grad(z)/lambda up to the step scaling.
        for (std::size_t r = 0; r < h; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                const std::size_t i = idx(r, c);
                double gx = c < w - 1 ? (z[idx(r, c + 1)] - z[i]) / lambda : 0.0;
                double gy = r < h - 1 ? (z[idx(r + 1, c)] - z[i]) / lambda : 0.0;
                double nx = px[i] - 0.125 * gx;
                double ny = py[i] - 0.125 * gy;
                const double mag = std::sqrt(nx * nx + ny * ny);
                if (mag > 1.0) {
                    nx /= mag;
                    ny /= mag;
                }
                px[i] = nx;
                py[i] = ny;
            }
        }
    }

    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            double d = 0.0;
            if (c < w - 1) d += px[idx(r, c)];
            if (c > 0) d -= px[idx(r, c - 1)];
            if (r < h - 1) d += py[idx(r, c)];
            if (r > 0) d -= py[idx(r - 1, c)];
            z[idx(r, c)] = x.data[idx(r, c)] - lambda * d;
        }
    }
    return like(x, std::move(z));
}

Image denoise(const DenoiserSpec& spec, const Image& x) {
    check_input(x);
    if (spec.sigma < 0.0) throw std::invalid_argument("denoise: negative sigma");
    if (spec.sigma == 0.0) return x;
    switch (spec.kind) {
        case DenoiserKind::identity:
            return x;
        case DenoiserKind::gaussian:
            return gaussian_blur(x, spec.sigma);
        case DenoiserKind::median:
            return median_filter(x, spec.median_window);
        case DenoiserKind::tv_prox:
            return tv_prox(x, spec.sigma, spec.tv_iters);
    }
    throw std::invalid_argument("denoise: unknown kind");
}

Image rescale_wrap(const DenoiserSpec& spec, const Image& x) {
    check_input(x);
    if (spec.sigma == 0.0) return x;  // keep zero strength bitwise neutral
    const auto [mn_it, mx_it] = std::minmax_element(x.data.begin(), x.data.end());
    const double mn = *mn_it;
    const double mx = *mx_it;
    if (!(mx > mn)) {
        std::fprintf(stderr,
                     "rescale_wrap: constant image, applying denoiser without rescaling\n");
        return denoise(spec, x);
    }
    Image scaled = x;
    const double inv = 1.0 / (mx - mn);
    for (double& v : scaled.data) v = (v - mn) * inv;
    Image y = denoise(spec, scaled);
    for (double& v : y.data) v = mn + v * (mx - mn);
    return y;
}

Image apply_denoiser(const DenoiserSpec& spec, const Image& x) {
    return spec.rescale_wrap ? rescale_wrap(spec, x) : denoise(spec, x);
}

double denoise_strength(const DenoiserSpec& spec, const Image& x) {
    Image y = apply_denoiser(spec, x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = y.data[i] - x.data[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace pnp
