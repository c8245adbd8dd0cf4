#include "pnpreg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pnp {

namespace {

void check_pair(const Image& x, const Image& truth) {
    if (x.width != truth.width || x.height != truth.height)
        throw std::invalid_argument("metrics: image dimensions differ");
    if (x.data.empty()) throw std::invalid_argument("metrics: empty image");
}

// Unit-sum 1-D Gaussian taps for the similarity window.
std::vector<double> window_taps(int radius, double std_dev) {
    std::vector<double> w(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-0.5 * (k / std_dev) * (k / std_dev));
        w[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

// Valid-region separable filtering: output is (h - 2r) x (w - 2r).
std::vector<double> filter_valid(const std::vector<double>& img, std::size_t w, std::size_t h,
                                 const std::vector<double>& taps, std::size_t& out_w,
                                 std::size_t& out_h) {
    const std::size_t r = taps.size() / 2;
    const std::size_t mid_w = w - 2 * r;
    std::vector<double> mid(mid_w * h);
    for (std::size_t row = 0; row < h; ++row)
        for (std::size_t col = 0; col < mid_w; ++col) {
            double s = 0.0;
            for (std::size_t k = 0; k < taps.size(); ++k) s += taps[k] * img[row * w + col + k];
            mid[row * mid_w + col] = s;
        }
    out_w = mid_w;
    out_h = h - 2 * r;
    std::vector<double> out(out_w * out_h);
    for (std::size_t row = 0; row < out_h; ++row)
        for (std::size_t col = 0; col < mid_w; ++col) {
            double s = 0.0;
            for (std::size_t k = 0; k < taps.size(); ++k)
                s += taps[k] * mid[(row + k) * mid_w + col];
            out[row * out_w + col] = s;
        }
    return out;
}

std::vector<double> normalize_to_unit_range(const Vector& data, const char* who) {
    const auto [mn_it, mx_it] = std::minmax_element(data.begin(), data.end());
    if (!(*mx_it > *mn_it))
        throw std::invalid_argument(std::string("ssim: constant ") + who +
                                    " image breaks range normalization");
    std::vector<double> out(data.size());
    const double inv = 1.0 / (*mx_it - *mn_it);
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = (data[i] - *mn_it) * inv;
    return out;
}

}  // namespace

double rel_mse(const Image& x, const Image& truth) {
    check_pair(x, truth);
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = x.data[i] - truth.data[i];
        err += d * d;
        ref += truth.data[i] * truth.data[i];
    }
    if (ref == 0.0) throw std::invalid_argument("rel_mse: zero truth image");
    return std::sqrt(err / ref);
}

double psnr(const Image& x, const Image& truth) {
    check_pair(x, truth);
    const double peak = *std::max_element(truth.data.begin(), truth.data.end());
    if (peak == 0.0) throw std::invalid_argument("psnr: zero truth peak");
    double err = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = x.data[i] - truth.data[i];
        err += d * d;
    }
    err /= static_cast<double>(x.data.size());
    if (err == 0.0) return 300.0;
    return std::min(300.0, 10.0 * std::log10(peak * peak / err));
}

double ssim(const Image& x, const Image& truth) {
    check_pair(x, truth);
    constexpr int kRadius = 5;  // 11x11 window
    constexpr double kStd = 1.5;
    constexpr double kC1 = 0.01 * 0.01;  // (K1 * L)^2 with L = 1
    constexpr double kC2 = 0.03 * 0.03;
    if (x.width < 11 || x.height < 11)
        throw std::invalid_argument("ssim: images must be at least 11x11");

    const std::vector<double> a = normalize_to_unit_range(x.data, "first");
    const std::vector<double> b = normalize_to_unit_range(truth.data, "second");

    std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }

    const std::vector<double> taps = window_taps(kRadius, kStd);
    std::size_t ow = 0, oh = 0;
    const std::vector<double> mu_a = filter_valid(a, x.width, x.height, taps, ow, oh);
    const std::vector<double> mu_b = filter_valid(b, x.width, x.height, taps, ow, oh);
    const std::vector<double> m_aa = filter_valid(aa, x.width, x.height, taps, ow, oh);
    const std::vector<double> m_bb = filter_valid(bb, x.width, x.height, taps, ow, oh);
    const std::vector<double> m_ab = filter_valid(ab, x.width, x.height, taps, ow, oh);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double va = m_aa[i] - mu_a[i] * mu_a[i];
        const double vb = m_bb[i] - mu_b[i] * mu_b[i];
        const double cab = m_ab[i] - mu_a[i] * mu_b[i];
        const double num = (2.0 * mu_a[i] * mu_b[i] + kC1) * (2.0 * cab + kC2);
        const double den = (mu_a[i] * mu_a[i] + mu_b[i] * mu_b[i] + kC1) * (va + vb + kC2);
        total += num / den;
    }
    return total / static_cast<double>(mu_a.size());
}

double relative_residual(const SparseOperator& A, const Vector& b, const Vector& x) {
    if (b.size() != A.rows()) throw std::invalid_argument("relative_residual: size mismatch");
    const double b_norm = norm2(b);
    if (b_norm == 0.0) throw std::invalid_argument("relative_residual: zero reference data");
    Vector r = A.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return norm2(r) / b_norm;
}

}  // namespace pnp
