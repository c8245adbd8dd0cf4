#include "pnpreg/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pnpreg/cg.hpp"
#include "pnpreg/errors.hpp"
#include "pnpreg/metrics.hpp"

namespace pnp {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Dims {
    std::size_t w = 0;
    std::size_t h = 0;
};

Dims resolve_dims(const SparseOperator& A, const SolverConfig& cfg) {
    if (cfg.image_width > 0 && cfg.image_height > 0) {
        if (cfg.image_width * cfg.image_height != A.cols())
            throw config_error("solver: image dimensions do not match operator columns");
        return {cfg.image_width, cfg.image_height};
    }
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(double(A.cols()))));
    if (n * n != A.cols())
        throw config_error("solver: operator is not square-image sized, set image dimensions");
    return {n, n};
}

double resolve_tau(const SparseOperator& A, const SolverConfig& cfg, double& norm_sq_out) {
    const double est = power_iteration_norm_sq(A, cfg.norm_iters, cfg.seed);
    norm_sq_out = est;
    if (!(est > 0.0)) throw config_error("solver: operator norm estimate is zero");
    if (cfg.tau > 0.0) {
        // Accept equality with the bound (iteration matrix spectrum still in
        // [0, 1]); reject only a strict violation.
        if (2.0 * cfg.tau * est > 1.0 + 1e-9)
            throw config_error("solver: tau " + std::to_string(cfg.tau) +
                               " exceeds the stability bound 1/(2||A||^2) = " +
                               std::to_string(0.5 / est));
        return cfg.tau;
    }
    if (!(cfg.tau_safety > 0.0 && cfg.tau_safety <= 1.0))
        throw config_error("solver: tau_safety must lie in (0, 1]");
    return cfg.tau_safety * 0.5 / est;
}

void check_common(const SparseOperator& A, const Vector& b, const SolverConfig& cfg) {
    if (b.size() != A.rows()) throw config_error("solver: data length must match operator rows");
    if (cfg.max_iters < 0) throw config_error("solver: max_iters must be nonnegative");
    if (!all_finite(b)) throw config_error("solver: non-finite data");
}

std::function<double(const Image&)> criterion_score(const SolverMonitor& mon) {
    if (mon.criterion == nullptr || mon.criterion_op == nullptr || mon.criterion_data == nullptr)
        return {};
    return [&mon](const Image& img) {
        return evaluate_criterion(*mon.criterion, *mon.criterion_op, *mon.criterion_data,
                                  img.data);
    };
}

// Fills the quality fields of a record from the reported iterate.
void score_record(IterationRecord& rec, const Image& z_img, const SolverMonitor& mon,
                  const std::function<double(const Image&)>& score, double b_norm) {
    rec.d_err = b_norm > 0.0 ? std::sqrt(rec.discrepancy) / b_norm : kNan;
    rec.cv_error = score ? score(z_img) : kNan;
    if (mon.truth != nullptr) {
        rec.mse_vs_truth = rel_mse(z_img, *mon.truth);
        rec.psnr = psnr(z_img, *mon.truth);
        const bool ssim_ok = z_img.width >= 11 && z_img.height >= 11;
        rec.ssim = ssim_ok ? ssim(z_img, *mon.truth) : kNan;
    } else {
        rec.mse_vs_truth = kNan;
        rec.psnr = kNan;
        rec.ssim = kNan;
    }
}

void require_finite(const Vector& v, int k, const char* what) {
    if (!all_finite(v))
        throw solver_abort(std::string("iteration ") + std::to_string(k) +
                           ": non-finite values in " + what);
}

std::vector<double> default_alpha_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 20; ++i) g.push_back(0.05 * i);
    return g;
}

enum class FbsVariant { plain, fast };

IterationTrace run_fbs(const SparseOperator& A, const Vector& b, const DenoiserSpec& H,
                       const SolverConfig& cfg, const SolverMonitor& mon, FbsVariant variant) {
    check_common(A, b, cfg);
    const Dims dims = resolve_dims(A, cfg);
    IterationTrace trace;
    trace.b_fit_norm = norm2(b);
    const double tau = resolve_tau(A, cfg, trace.norm_sq_estimate);
    trace.tau_used = tau;

    const auto score = criterion_score(mon);
    if (cfg.attenuation == AttenuationMode::select_alpha && !score)
        throw config_error("solver: alpha selection needs a criterion in the monitor");
    if (!cfg.sigma_grid.empty() && !score)
        throw config_error("solver: sigma selection needs a criterion in the monitor");
    const std::vector<double> alpha_grid =
        cfg.alpha_grid.empty() ? default_alpha_grid() : cfg.alpha_grid;

    const std::size_t n = A.cols();
    Image z(dims.w, dims.h);        // current iterate (gradient point)
    Image v_prev(dims.w, dims.h);   // previous denoised iterate, for momentum
    Image last_x(dims.w, dims.h);
    Vector r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = -b[i];  // A z0 - b with z0 = 0
    Vector g(n), Az(b.size());
    double t_momentum = 1.0;

    trace.records.reserve(static_cast<std::size_t>(cfg.max_iters));
    for (int k = 1; k <= cfg.max_iters; ++k) {
        A.apply_adjoint_into(r, g);
        for (double& gi : g) gi *= 2.0;

        Image x(dims.w, dims.h);
        for (std::size_t i = 0; i < n; ++i) x.data[i] = z.data[i] - tau * g[i];
        double gsn_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x.data[i] - z.data[i];
            gsn_sq += d * d;
        }
        const double gsn = std::sqrt(gsn_sq);
        require_finite(x.data, k, "the gradient step");

        DenoiserSpec Hk = H;
        if (cfg.sigma_update == SigmaUpdate::scaled) Hk.sigma = tau * H.sigma;
        if (!cfg.sigma_grid.empty()) Hk.sigma = select_sigma(x, Hk, cfg.sigma_grid, score);
        Image Hx = apply_denoiser(Hk, x);

        double dc_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = Hx.data[i] - x.data[i];
            dc_sq += d * d;
        }
        const double denoise_change = std::sqrt(dc_sq);

        AttenuationResult att;
        switch (cfg.attenuation) {
            case AttenuationMode::none:
                att.z = std::move(Hx);
                att.alpha = 1.0;
                break;
            case AttenuationMode::gamma:
                att = attenuate_gamma(x, Hx, gsn, cfg.gamma);
                break;
            case AttenuationMode::select_alpha:
                att = attenuate_select(x, Hx, score, alpha_grid);
                break;
        }

        // Direction of the full step out of z, before any extrapolation,
        // against the negative gradient step x - z = -tau * grad.
        double inner = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            inner += (att.z.data[i] - z.data[i]) * (x.data[i] - z.data[i]);

        Image z_next = att.z;
        if (variant == FbsVariant::fast) {
            const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
            const double momentum = (t_momentum - 1.0) / t_new;
            t_momentum = t_new;
            if (k > 1 && momentum != 0.0)
                for (std::size_t i = 0; i < n; ++i)
                    z_next.data[i] += momentum * (att.z.data[i] - v_prev.data[i]);
            v_prev = std::move(att.z);
        }
        require_finite(z_next.data, k, "the denoised iterate");

        A.apply_into(z_next.data, Az);
        double disc = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] = Az[i] - b[i];
            disc += r[i] * r[i];
        }

        IterationRecord rec;
        rec.k = k;
        rec.inner_product = inner;
        rec.grad_step_norm = gsn;
        rec.denoise_change = denoise_change;
        rec.alpha_used = att.alpha;
        rec.discrepancy = disc;
        score_record(rec, z_next, mon, score, trace.b_fit_norm);
        if (cfg.store_iterates) {
            rec.x = x;
            rec.z = z_next;
        }
        trace.records.push_back(std::move(rec));
        last_x = std::move(x);
        z = std::move(z_next);
    }

    trace.final_x = std::move(last_x);
    trace.final_z = std::move(z);
    return trace;
}

}  // namespace

AttenuationResult attenuate_gamma(const Image& x, const Image& Hx, double grad_step_norm,
                                  double gamma) {
    if (x.data.size() != Hx.data.size())
        throw std::invalid_argument("attenuate_gamma: size mismatch");
    if (!(gamma > 0.0)) throw std::invalid_argument("attenuate_gamma: gamma must be positive");
    double dc_sq = 0.0;
    for (std::size_t i = 0; i < x.data.size(); ++i) {
        const double d = Hx.data[i] - x.data[i];
        dc_sq += d * d;
    }
    const double dc = std::sqrt(dc_sq);
    AttenuationResult out;
    out.alpha = dc > 0.0 ? std::min(1.0, gamma * grad_step_norm / dc) : 1.0;
    out.z = x;
    for (std::size_t i = 0; i < x.data.size(); ++i)
        out.z.data[i] = x.data[i] + out.alpha * (Hx.data[i] - x.data[i]);
    return out;
}

AttenuationResult attenuate_select(const Image& x, const Image& Hx,
                                   const std::function<double(const Image&)>& score,
                                   const std::vector<double>& alpha_grid) {
    if (x.data.size() != Hx.data.size())
        throw std::invalid_argument("attenuate_select: size mismatch");
    if (!score) throw std::invalid_argument("attenuate_select: missing score");
    if (alpha_grid.empty()) throw std::invalid_argument("attenuate_select: empty grid");

    AttenuationResult out;
    double best = std::numeric_limits<double>::infinity();
    Image candidate(x.width, x.height);
    for (double alpha : alpha_grid) {
        for (std::size_t i = 0; i < x.data.size(); ++i)
            candidate.data[i] = x.data[i] + alpha * (Hx.data[i] - x.data[i]);
        const double s = score(candidate);
        if (s < best) {
            best = s;
            out.alpha = alpha;
            out.z = candidate;
        }
    }
    return out;
}

double select_sigma(const Image& x, const DenoiserSpec& base,
                    const std::vector<double>& sigma_grid,
                    const std::function<double(const Image&)>& score) {
    if (!score) throw std::invalid_argument("select_sigma: missing score");
    if (sigma_grid.empty()) throw std::invalid_argument("select_sigma: empty grid");
    double best_sigma = sigma_grid.front();
    double best = std::numeric_limits<double>::infinity();
    for (double sigma : sigma_grid) {
        if (sigma < 0.0) throw std::invalid_argument("select_sigma: negative sigma");
        DenoiserSpec spec = base;
        spec.sigma = sigma;
        const double s = score(apply_denoiser(spec, x));
        if (s < best) {
            best = s;
            best_sigma = sigma;
        }
    }
    return best_sigma;
}

std::vector<double> make_linear_grid(double lo, double hi, int count) {
    if (count < 1 || (count == 1 && lo != hi) || lo > hi)
        throw std::invalid_argument("make_linear_grid: bad range");
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        g.push_back(lo);
        return g;
    }
    for (int i = 0; i < count; ++i)
        g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return g;
}

IterationTrace landweber(const SparseOperator& A, const Vector& b, const SolverConfig& cfg,
                         const SolverMonitor& mon) {
    check_common(A, b, cfg);
    const Dims dims = resolve_dims(A, cfg);
    IterationTrace trace;
    trace.b_fit_norm = norm2(b);
    const double tau = resolve_tau(A, cfg, trace.norm_sq_estimate);
    trace.tau_used = tau;
    const auto score = criterion_score(mon);

    const std::size_t n = A.cols();
    Image x(dims.w, dims.h);
    Vector r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = -b[i];
    Vector g(n), Ax(b.size());

    trace.records.reserve(static_cast<std::size_t>(cfg.max_iters));
    for (int k = 1; k <= cfg.max_iters; ++k) {
        A.apply_adjoint_into(r, g);
        for (double& gi : g) gi *= 2.0;

        double gsn_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double step = tau * g[i];
            x.data[i] = x.data[i] - step;
            gsn_sq += step * step;
        }
        require_finite(x.data, k, "the gradient step");

        A.apply_into(x.data, Ax);
        double disc = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] = Ax[i] - b[i];
            disc += r[i] * r[i];
        }

        IterationRecord rec;
        rec.k = k;
        rec.inner_product = gsn_sq;  // step is exactly -tau * grad
        rec.grad_step_norm = std::sqrt(gsn_sq);
        rec.denoise_change = 0.0;
        rec.alpha_used = 1.0;
        rec.discrepancy = disc;
        score_record(rec, x, mon, score, trace.b_fit_norm);
        if (cfg.store_iterates) {
            rec.x = x;
            rec.z = x;
        }
        trace.records.push_back(std::move(rec));
    }

    trace.final_x = x;
    trace.final_z = std::move(x);
    return trace;
}

IterationTrace fbs_pnp(const SparseOperator& A, const Vector& b, const DenoiserSpec& H,
                       const SolverConfig& cfg, const SolverMonitor& mon) {
    return run_fbs(A, b, H, cfg, mon, FbsVariant::plain);
}

IterationTrace fast_fbs_pnp(const SparseOperator& A, const Vector& b, const DenoiserSpec& H,
                            const SolverConfig& cfg, const SolverMonitor& mon) {
    return run_fbs(A, b, H, cfg, mon, FbsVariant::fast);
}

IterationTrace admm_pnp(const SparseOperator& A, const Vector& b, const DenoiserSpec& H,
                        const SolverConfig& cfg, const SolverMonitor& mon) {
    check_common(A, b, cfg);
    const Dims dims = resolve_dims(A, cfg);
    if (!(cfg.rho > 0.0)) throw config_error("solver: rho must be positive");
    if (cfg.inner_cg_iters < 1) throw config_error("solver: inner_cg_iters must be >= 1");

    IterationTrace trace;
    trace.b_fit_norm = norm2(b);
    const auto score = criterion_score(mon);
    if (!cfg.sigma_grid.empty() && !score)
        throw config_error("solver: sigma selection needs a criterion in the monitor");

    const std::size_t n = A.cols();
    SparseOperator grad_op;
    if (cfg.first_iterate == FirstIterate::grad_magnitude)
        grad_op = gradient_operator(dims.w, dims.h);

    Vector x(n, 0.0), z(n, 0.0), u(n, 0.0);
    Vector Atb = A.apply_adjoint(b);
    Vector rhs(n), x_new, g_old(n), r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = -b[i];  // A x0 - b
    Vector Ax(b.size());

    const double cg_tol = cfg.inner_cg_mode == CgStopMode::fixed ? 0.0 : cfg.inner_cg_tol;

    trace.records.reserve(static_cast<std::size_t>(cfg.max_iters));
    for (int k = 1; k <= cfg.max_iters; ++k) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = Atb[i] + cfg.rho * (z[i] - u[i]);
        const SparseOperator* L =
            (k == 1 && cfg.first_iterate == FirstIterate::grad_magnitude) ? &grad_op : nullptr;
        const Vector* start = cfg.warm_start_cg ? &x : nullptr;
        CgReport report =
            cg_solve(A, L, cfg.rho, rhs, cfg.inner_cg_iters, cg_tol, x_new, start);
        if (!report.converged && report.iterations_used < cfg.inner_cg_iters)
            throw solver_abort("iteration " + std::to_string(k) +
                               ": inner solve broke down after " +
                               std::to_string(report.iterations_used) +
                               " steps (residual " + std::to_string(report.final_residual_norm) +
                               ")");
        require_finite(x_new, k, "the inner solve");

        // Direction of the x-move against the negative data-term gradient at
        // the previous x; r still holds A x_old - b.
        A.apply_adjoint_into(r, g_old);
        double inner = 0.0;
        double step_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x_new[i] - x[i];
            inner += d * (-2.0 * g_old[i]);
            step_sq += d * d;
        }

        DenoiserSpec Hk = H;
        if (cfg.sigma_update == SigmaUpdate::scaled) Hk.sigma = H.sigma / cfg.rho;
        Image v(dims.w, dims.h);
        for (std::size_t i = 0; i < n; ++i) v.data[i] = x_new[i] + u[i];
        if (!cfg.sigma_grid.empty()) Hk.sigma = select_sigma(v, Hk, cfg.sigma_grid, score);
        Image Hv = apply_denoiser(Hk, v);
        double dc_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = Hv.data[i] - v.data[i];
            dc_sq += d * d;
        }

        z = Hv.data;
        for (std::size_t i = 0; i < n; ++i) u[i] = u[i] + x_new[i] - z[i];
        x = x_new;
        require_finite(z, k, "the denoised iterate");

        A.apply_into(x, Ax);
        double disc = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[i] = Ax[i] - b[i];
            disc += r[i] * r[i];
        }

        IterationRecord rec;
        rec.k = k;
        rec.inner_product = inner;
        rec.grad_step_norm = std::sqrt(step_sq);  // length of the x-move
        rec.denoise_change = std::sqrt(dc_sq);
        rec.alpha_used = 1.0;
        rec.discrepancy = disc;
        Image z_img(dims.w, dims.h, z);
        score_record(rec, z_img, mon, score, trace.b_fit_norm);
        if (cfg.store_iterates) {
            rec.x = Image(dims.w, dims.h, x);
            rec.z = std::move(z_img);
        }
        trace.records.push_back(std::move(rec));
    }

    trace.final_x = Image(dims.w, dims.h, std::move(x));
    trace.final_z = Image(dims.w, dims.h, std::move(z));
    return trace;
}

}  // namespace pnp
