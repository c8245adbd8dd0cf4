#pragma once

#include "pnpreg/image.hpp"
#include "pnpreg/sparse_operator.hpp"

namespace pnp {

// Quality numbers for one reconstruction against the ground truth and the
// fit / held-out data splits.
struct MetricsReport {
    double rel_mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    double d_err = 0.0;  // relative residual on the fitted rows
    double s_err = 0.0;  // relative residual on the held-out rows
};

// ||x - truth||_2 / ||truth||_2.
double rel_mse(const Image& x, const Image& truth);

// 10 log10(peak^2 / mean squared error), peak = max(truth).
// Saturates at 300 dB when the error vanishes.
double psnr(const Image& x, const Image& truth);

// Mean structural similarity over all fully interior 11x11 windows
// (Gaussian weights, std 1.5), with both images first normalized to [0,1]
// by their own ranges. Requires both dimensions >= 11 and nonconstant
// images.
double ssim(const Image& x, const Image& truth);

// ||A x - b|| / ||b||; serves both residual columns of MetricsReport when
// given the corresponding row-subset operator and data.
double relative_residual(const SparseOperator& A, const Vector& b, const Vector& x);

}  // namespace pnp
