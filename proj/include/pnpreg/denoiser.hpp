#pragma once

#include "pnpreg/image.hpp"

namespace pnp {

enum class DenoiserKind { identity, gaussian, median, tv_prox };

// sigma is the single strength knob shared by every kind: gaussian maps it to
// a kernel width, tv_prox uses it as the regularization weight, median treats
// any positive value as "on". sigma = 0 is the exact identity for all kinds.
struct DenoiserSpec {
    DenoiserKind kind = DenoiserKind::identity;
    double sigma = 0.0;
    int median_window = 3;  // odd
    int tv_iters = 30;
    bool rescale_wrap = false;
};

// The raw operator H_sigma; ignores spec.rescale_wrap.
Image denoise(const DenoiserSpec& spec, const Image& x);

// H applied in normalized coordinates: scale x to [0,1] by its own range,
// denoise, scale back. Constant input bypasses the normalization (logged).
Image rescale_wrap(const DenoiserSpec& spec, const Image& x);

// denoise or rescale_wrap, according to spec.rescale_wrap. This is the
// operator the solvers call.
Image apply_denoiser(const DenoiserSpec& spec, const Image& x);

// ||apply_denoiser(x) - x||_2.
double denoise_strength(const DenoiserSpec& spec, const Image& x);

// Proximal map of lambda * TV(.) at x (isotropic TV, forward differences),
// computed by fixed-count projected gradient ascent on the dual with step
// 1/8. inner_iters is fixed, not adaptive, to keep runs reproducible.
Image tv_prox(const Image& x, double lambda, int inner_iters);

}  // namespace pnp
