#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pnpreg/denoiser.hpp"
#include "pnpreg/selection.hpp"
#include "pnpreg/sparse_operator.hpp"
#include "pnpreg/trace.hpp"

namespace pnp {

enum class SigmaUpdate { fixed, scaled };
enum class AttenuationMode { none, gamma, select_alpha };
enum class CgStopMode { fixed, tolerance };
enum class FirstIterate { identity, grad_magnitude };

struct SolverConfig {
    int max_iters = 100;

    // Gradient solvers. tau <= 0 derives the step as tau_safety times the
    // stability bound 1 / (2 ||A||^2); an explicit tau above that bound is
    // rejected.
    double tau = 0.0;
    double tau_safety = 0.8;
    int norm_iters = 100;        // power iterations behind the bound
    std::uint64_t seed = 0;      // probe vector seed for the norm estimate

    // Denoising step control.
    SigmaUpdate sigma_update = SigmaUpdate::fixed;
    AttenuationMode attenuation = AttenuationMode::none;
    double gamma = 0.5;
    std::vector<double> alpha_grid;  // empty selects 0.05, 0.10, ..., 1.00
    std::vector<double> sigma_grid;  // nonempty: re-pick sigma each iteration

    // Splitting solver.
    double rho = 1.0;
    int inner_cg_iters = 100;
    CgStopMode inner_cg_mode = CgStopMode::fixed;
    double inner_cg_tol = 1e-10;
    FirstIterate first_iterate = FirstIterate::identity;
    bool warm_start_cg = false;

    bool store_iterates = false;
    std::size_t image_width = 0;  // 0: square image inferred from A. cols
    std::size_t image_height = 0;
};

// Optional observers; all pointers may be null. criterion rows index
// criterion_op (normally the full scan operator) and criterion_data holds
// the measured values at those rows.
struct SolverMonitor {
    const SparseOperator* criterion_op = nullptr;
    const Vector* criterion_data = nullptr;
    const SelectionCriterion* criterion = nullptr;
    const Image* truth = nullptr;
};

struct AttenuationResult {
    Image z;
    double alpha = 1.0;
};

// Blend z = x + alpha (Hx - x) with alpha = min(1, gamma * step / ||Hx - x||),
// which caps the denoising move at gamma times the gradient step and thereby
// keeps the combined direction a descent direction for gamma < 1.
AttenuationResult attenuate_gamma(const Image& x, const Image& Hx, double grad_step_norm,
                                  double gamma);

// Try every alpha in the grid and keep the blend with the smallest score
// (earliest grid point on ties). No descent guarantee.
AttenuationResult attenuate_select(const Image& x, const Image& Hx,
                                   const std::function<double(const Image&)>& score,
                                   const std::vector<double>& alpha_grid);

// Denoiser strength with the smallest score of H_sigma(x) over the grid
// (smallest sigma on ties).
double select_sigma(const Image& x, const DenoiserSpec& base,
                    const std::vector<double>& sigma_grid,
                    const std::function<double(const Image&)>& score);

// count evenly spaced values from lo to hi inclusive (count >= 2, or
// count == 1 with lo == hi).
std::vector<double> make_linear_grid(double lo, double hi, int count);

// x_k = x_{k-1} - tau * 2 A^T (A x_{k-1} - b), from zero.
IterationTrace landweber(const SparseOperator& A, const Vector& b_fit, const SolverConfig& cfg,
                         const SolverMonitor& mon = {});

// Gradient step on the data term followed by the denoiser, with optional
// attenuation of the denoising move.
IterationTrace fbs_pnp(const SparseOperator& A, const Vector& b_fit, const DenoiserSpec& H,
                       const SolverConfig& cfg, const SolverMonitor& mon = {});

// fbs_pnp plus momentum extrapolation of the denoised iterates
// (t_k = (1 + sqrt(1 + 4 t_{k-1}^2)) / 2, weight (t_{k-1} - 1) / t_k).
IterationTrace fast_fbs_pnp(const SparseOperator& A, const Vector& b_fit, const DenoiserSpec& H,
                            const SolverConfig& cfg, const SolverMonitor& mon = {});

// Splitting iteration: x-update solves (A^T A + rho I) x = A^T b + rho (z - u)
// by CG, z-update applies the denoiser at x + u, u accumulates the residual.
// sigma_update = scaled divides sigma by rho in the z-update. first_iterate =
// grad_magnitude regularizes only the first x-update with the finite
// difference gradient operator instead of the identity.
IterationTrace admm_pnp(const SparseOperator& A, const Vector& b_fit, const DenoiserSpec& H,
                        const SolverConfig& cfg, const SolverMonitor& mon = {});

}  // namespace pnp
