#include "pnpreg/experiment.hpp"

#include "pnpreg/errors.hpp"

namespace pnp {

namespace {

ProblemConfig fan_problem(std::size_t n, std::size_t angles, std::size_t rays) {
    ProblemConfig p;
    p.n = n;
    p.geometry = GeometryKind::fan_curved;
    p.angles = angles;
    p.rays = rays;
    p.angle_span_deg = 360.0;
    p.phantom_lo = -1.0;
    p.phantom_hi = 1.0;
    p.noise_target = 0.01;
    p.cv_fraction = 0.01;
    p.seed = 7;
    return p;
}

ExperimentConfig example1_weak() {
    ExperimentConfig cfg;
    cfg.name = "example1_weak";
    cfg.problem = fan_problem(128, 45, 181);
    cfg.denoiser.kind = DenoiserKind::gaussian;
    cfg.denoiser.sigma = 0.0005;
    cfg.denoiser.rescale_wrap = true;
    cfg.algorithm = Algorithm::fast_fbs_pnp;
    cfg.solver.max_iters = 1000;
    cfg.criterion = CriterionKind::cross_validation;
    return cfg;
}

ExperimentConfig example2_strong() {
    ExperimentConfig cfg = example1_weak();
    cfg.name = "example2_strong";
    cfg.denoiser.sigma = 0.02;
    cfg.solver.max_iters = 250;
    cfg.solver.attenuation = AttenuationMode::select_alpha;
    return cfg;
}

ExperimentConfig example3_admm() {
    ExperimentConfig cfg;
    cfg.name = "example3_admm";
    cfg.problem = fan_problem(64, 45, 95);
    cfg.denoiser.kind = DenoiserKind::gaussian;
    cfg.denoiser.sigma = 0.02;
    cfg.denoiser.rescale_wrap = true;
    cfg.algorithm = Algorithm::admm_pnp;
    cfg.solver.max_iters = 250;
    cfg.solver.rho = 100.0;
    cfg.solver.sigma_update = SigmaUpdate::fixed;
    cfg.solver.inner_cg_iters = 100;
    cfg.solver.inner_cg_mode = CgStopMode::fixed;
    cfg.criterion = CriterionKind::cross_validation;
    return cfg;
}

ExperimentConfig example4_precond() {
    ExperimentConfig cfg = example3_admm();
    cfg.name = "example4_precond";
    cfg.solver.first_iterate = FirstIterate::grad_magnitude;
    return cfg;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "example1_weak", "example2_strong", "example3_admm", "example4_precond"};
    return names;
}

std::string preset_description(const std::string& name) {
    if (name == "example1_weak")
        return "fan-beam CT, fast FBS with a weak gaussian denoiser, cross-validated stop";
    if (name == "example2_strong")
        return "fan-beam CT, fast FBS with a strong gaussian denoiser and selected "
               "attenuation";
    if (name == "example3_admm")
        return "fan-beam CT, ADMM with a gaussian denoiser and fixed inner CG budget";
    if (name == "example4_precond")
        return "example3_admm with a gradient-magnitude regularizer on the first iterate";
    throw config_error("unknown preset: " + name);
}

ExperimentConfig preset_config(const std::string& name) {
    if (name == "example1_weak") return example1_weak();
    if (name == "example2_strong") return example2_strong();
    if (name == "example3_admm") return example3_admm();
    if (name == "example4_precond") return example4_precond();
    throw config_error("unknown preset: " + name);
}

}  // namespace pnp
