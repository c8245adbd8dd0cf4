#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pnpreg/denoiser.hpp"
#include "pnpreg/geometry.hpp"
#include "pnpreg/selection.hpp"
#include "pnpreg/sinogram.hpp"
#include "pnpreg/solver.hpp"

namespace pnp {

enum class Algorithm { landweber, fbs_pnp, fast_fbs_pnp, admm_pnp };

struct ProblemConfig {
    std::size_t n = 64;
    GeometryKind geometry = GeometryKind::parallel;
    std::size_t angles = 30;
    std::size_t rays = 95;
    double angle_span_deg = 0.0;  // 0: 180 for parallel, 360 for fan
    double source_radius = 0.0;   // 0: 2n
    double detector_radius = 0.0;
    double phantom_lo = 0.0;
    double phantom_hi = 1.0;
    double noise_target = 0.01;
    double cv_fraction = 0.01;
    std::uint64_t seed = 7;
};

// One experiment, as read from a key = value config file. Seeds derive from
// problem.seed: noise uses seed, the train/holdout split seed + 1, the
// operator norm probe seed + 2.
struct ExperimentConfig {
    std::string name = "experiment";
    std::string output_dir = ".";
    bool write_data = false;  // also export phantom and sinogram files
    ProblemConfig problem;
    DenoiserSpec denoiser;
    Algorithm algorithm = Algorithm::landweber;
    SolverConfig solver;
    CriterionKind criterion = CriterionKind::cross_validation;
    double eta = 1.1;
};

struct SummaryRow {
    std::string label;  // final_N, selected_S, min_mse
    int k = 0;
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
    double d_err = 0.0;
    double s_err = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    IterationTrace trace;
    double delta = 0.0;  // realized noise magnitude
    Corridor corridor;
    int selected_k = 0;
    int min_mse_k = 0;
    std::vector<SummaryRow> summary;
    Image phantom;
    Sinogram sinogram;
};

// Strict parser: unknown keys, type errors and missing required keys
// (problem.n, solver.algorithm) are reported with line numbers.
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "config");
ExperimentConfig parse_config_file(const std::string& path);

// Canonical text form: every key, fixed order. Parsing it back gives an
// equivalent config, and serializing again gives identical text.
std::string serialize_config(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Trace CSV: exact header
// k,mse,psnr,ssim,d_err,s_err,inner_product,grad_step_norm,denoise_change,alpha,discrepancy
// one row per iteration, reals formatted to round-trip, LF endings.
std::string emit_trace_csv(const IterationTrace& trace);

std::string emit_summary_csv(const ExperimentResult& result);
std::string emit_summary_text(const ExperimentResult& result);

// Writes <name>_trace.csv, <name>_summary.csv, <name>_summary.txt (and the
// phantom / sinogram exports when write_data is set) into dir; returns the
// paths written.
std::vector<std::string> write_result_files(const ExperimentResult& result,
                                            const std::string& dir);

const std::vector<std::string>& preset_names();
std::string preset_description(const std::string& name);
ExperimentConfig preset_config(const std::string& name);

}  // namespace pnp
