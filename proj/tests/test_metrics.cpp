#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "pnpreg/metrics.hpp"
#include "pnpreg/phantom.hpp"
#include "pnpreg/selection.hpp"
#include "test_util.hpp"

using namespace pnp;

namespace {

Image noisy_copy(const Image& x, double std_dev, unsigned seed) {
    Image y = x;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std_dev);
    for (double& v : y.data) v += gauss(rng);
    return y;
}

}  // namespace

TEST_CASE("rel_mse on the canonical cases") {
    const Image truth = shepp_logan(32, 0.0, 1.0);
    CHECK(rel_mse(truth, truth) == 0.0);
    Image twice = truth;
    for (double& v : twice.data) v *= 2.0;
    CHECK(rel_mse(twice, truth) == doctest::Approx(1.0).epsilon(1e-14));
    const Image zero(32, 32, 0.0);
    CHECK(rel_mse(zero, truth) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(rel_mse(zero, zero), std::invalid_argument);
}

TEST_CASE("psnr matches the decibel formula and saturates") {
    Image truth(16, 16, 0.0);
    truth.data[0] = 1.0;  // peak = 1
    CHECK(psnr(truth, truth) == 300.0);

    // Mean squared error 0.01 against peak 1 gives 20 dB.
    Image off = truth;
    for (double& v : off.data) v += 0.1;
    CHECK(psnr(off, truth) == doctest::Approx(20.0).epsilon(1e-12));
    Image off2 = truth;
    for (double& v : off2.data) v += 0.01;
    CHECK(psnr(off2, truth) == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("psnr decreases as the error grows") {
    const Image truth = shepp_logan(32, 0.0, 1.0);
    double prev = 301.0;
    for (double level : {0.001, 0.01, 0.1, 0.5}) {
        const double cur = psnr(noisy_copy(truth, level, 5), truth);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("ssim is one on identical and affine-related images") {
    const Image truth = shepp_logan(48, 0.0, 1.0);
    CHECK(std::abs(ssim(truth, truth) - 1.0) <= 1e-12);
    for (const auto [a, c] : {std::pair{2.0, 0.1}, std::pair{0.3, -4.0}}) {
        Image scaled = truth;
        for (double& v : scaled.data) v = a * v + c;
        CHECK(std::abs(ssim(scaled, truth) - 1.0) <= 1e-10);
    }
}

TEST_CASE("ssim drops below one under independent noise") {
    const Image truth = shepp_logan(48, 0.0, 1.0);
    const double s = ssim(noisy_copy(truth, 0.3, 9), truth);
    CHECK(s < 0.95);
    CHECK(s > -1.0);
}

TEST_CASE("ssim is symmetric") {
    const Image truth = shepp_logan(48, 0.0, 1.0);
    const Image other = noisy_copy(truth, 0.1, 11);
    CHECK(std::abs(ssim(truth, other) - ssim(other, truth)) <= 1e-12);
}

TEST_CASE("ssim rejects degenerate input") {
    const Image truth = shepp_logan(48, 0.0, 1.0);
    const Image constant(48, 48, 1.0);
    CHECK_THROWS_AS(ssim(constant, truth), std::invalid_argument);
    CHECK_THROWS_AS(ssim(truth, constant), std::invalid_argument);
    const Image small_a(8, 8, 0.0);
    const Image small_b(8, 8, 1.0);
    CHECK_THROWS_AS(ssim(small_a, small_b), std::invalid_argument);
}

TEST_CASE("relative_residual agrees with the selection criterion") {
    const auto [A, dense] = testutil::random_operator(6, 5, 81);
    const Vector x = testutil::random_vector(5, 82);
    const Vector b = testutil::random_vector(6, 83);
    SelectionCriterion crit;
    crit.kind = CriterionKind::cross_validation;
    crit.rows = {0, 1, 2, 3, 4, 5};
    CHECK(relative_residual(A, b, x) ==
          doctest::Approx(evaluate_criterion(crit, A, b, x)).epsilon(1e-14));
}
