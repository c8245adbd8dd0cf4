#include "pnpreg/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pnpreg/errors.hpp"
#include "pnpreg/io.hpp"
#include "pnpreg/metrics.hpp"
#include "pnpreg/phantom.hpp"

namespace pnp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_at(const std::string& origin, std::size_t line_no,
                          const std::string& message) {
    throw config_error(origin + ": line " + std::to_string(line_no) + ": " + message);
}

double parse_real(const std::string& origin, std::size_t line_no, const std::string& key,
                  const std::string& value) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        fail_at(origin, line_no, key + ": expected a real number, got '" + value + "'");
    return v;
}

long long parse_int(const std::string& origin, std::size_t line_no, const std::string& key,
                    const std::string& value) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        fail_at(origin, line_no, key + ": expected an integer, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& origin, std::size_t line_no, const std::string& key,
                const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    fail_at(origin, line_no, key + ": expected true or false, got '" + value + "'");
}

template <typename T>
T parse_enum(const std::string& origin, std::size_t line_no, const std::string& key,
             const std::string& value, const std::map<std::string, T>& table) {
    const auto it = table.find(value);
    if (it != table.end()) return it->second;
    std::string allowed;
    for (const auto& [name, unused] : table) {
        (void)unused;
        if (!allowed.empty()) allowed += ", ";
        allowed += name;
    }
    fail_at(origin, line_no, key + ": expected one of {" + allowed + "}, got '" + value + "'");
}

// Grids come in three spellings: "none", a comma list, or lo:step:hi.
std::vector<double> parse_grid(const std::string& origin, std::size_t line_no,
                               const std::string& key, const std::string& value) {
    std::vector<double> grid;
    if (value == "none") return grid;
    if (value.find(':') != std::string::npos) {
        double lo = 0, step = 0, hi = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(value);
        if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || !ss.eof())
            fail_at(origin, line_no, key + ": expected lo:step:hi, got '" + value + "'");
        if (!(step > 0.0) || hi < lo)
            fail_at(origin, line_no, key + ": need step > 0 and hi >= lo");
        for (int i = 0;; ++i) {
            const double v = lo + step * i;
            if (v > hi + 1e-12 * std::max(1.0, std::abs(hi))) break;
            grid.push_back(v);
        }
        return grid;
    }
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail_at(origin, line_no, key + ": empty grid element");
        grid.push_back(parse_real(origin, line_no, key, item));
    }
    if (grid.empty()) fail_at(origin, line_no, key + ": empty grid");
    return grid;
}

const std::map<std::string, GeometryKind>& geometry_names() {
    static const std::map<std::string, GeometryKind> table = {
        {"parallel", GeometryKind::parallel}, {"fan_curved", GeometryKind::fan_curved}};
    return table;
}

const std::map<std::string, DenoiserKind>& denoiser_names() {
    static const std::map<std::string, DenoiserKind> table = {
        {"identity", DenoiserKind::identity},
        {"gaussian", DenoiserKind::gaussian},
        {"median", DenoiserKind::median},
        {"tv_prox", DenoiserKind::tv_prox}};
    return table;
}

const std::map<std::string, Algorithm>& algorithm_names() {
    static const std::map<std::string, Algorithm> table = {
        {"landweber", Algorithm::landweber},
        {"fbs_pnp", Algorithm::fbs_pnp},
        {"fast_fbs_pnp", Algorithm::fast_fbs_pnp},
        {"admm_pnp", Algorithm::admm_pnp}};
    return table;
}

template <typename T>
std::string enum_name(T value, const std::map<std::string, T>& table) {
    for (const auto& [name, v] : table)
        if (v == value) return name;
    return "?";
}

std::string grid_text(const std::vector<double>& grid) {
    if (grid.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) out += ',';
        out += format_g17(grid[i]);
    }
    return out;
}

void validate(const ExperimentConfig& cfg) {
    const auto bad = [](const std::string& msg) { throw config_error("config: " + msg); };
    if (cfg.name.empty()) bad("output.name must not be empty");
    if (cfg.name.find_first_of("/\\") != std::string::npos)
        bad("output.name must not contain path separators");
    if (cfg.problem.n < 16) bad("problem.n must be >= 16");
    if (cfg.problem.angles < 1 || cfg.problem.rays < 1)
        bad("problem.angles and problem.rays must be >= 1");
    if (cfg.problem.angle_span_deg < 0.0) bad("problem.angle_span_deg must be >= 0");
    if (!(cfg.problem.phantom_lo < cfg.problem.phantom_hi))
        bad("problem.phantom_lo must be below problem.phantom_hi");
    if (cfg.problem.noise_target < 0.0) bad("problem.noise_target must be >= 0");
    if (cfg.problem.cv_fraction < 0.0 || cfg.problem.cv_fraction >= 1.0)
        bad("problem.cv_fraction must lie in [0, 1)");
    if (cfg.denoiser.sigma < 0.0) bad("denoiser.sigma must be >= 0");
    if (cfg.denoiser.median_window < 1 || cfg.denoiser.median_window % 2 == 0)
        bad("denoiser.median_window must be odd and positive");
    if (cfg.denoiser.tv_iters < 1) bad("denoiser.tv_iters must be >= 1");
    if (cfg.solver.max_iters < 0) bad("solver.max_iters must be >= 0");
    if (!(cfg.solver.tau_safety > 0.0 && cfg.solver.tau_safety <= 1.0))
        bad("solver.tau_safety must lie in (0, 1]");
    if (cfg.solver.norm_iters < 1) bad("solver.norm_iters must be >= 1");
    if (!(cfg.solver.gamma > 0.0)) bad("solver.gamma must be positive");
    if (!(cfg.solver.rho > 0.0)) bad("solver.rho must be positive");
    if (cfg.solver.inner_cg_iters < 1) bad("solver.inner_cg_iters must be >= 1");
    if (cfg.solver.inner_cg_tol < 0.0) bad("solver.inner_cg_tol must be >= 0");
    if (cfg.eta <= 0.0) bad("selection.eta must be positive");
    for (double a : cfg.solver.alpha_grid)
        if (!(a > 0.0) || a > 1.0) bad("solver.alpha_grid values must lie in (0, 1]");
    for (double s : cfg.solver.sigma_grid)
        if (s < 0.0) bad("solver.sigma_grid values must be >= 0");
    const bool needs_holdout = cfg.criterion == CriterionKind::cross_validation ||
                               cfg.solver.attenuation == AttenuationMode::select_alpha ||
                               !cfg.solver.sigma_grid.empty();
    if (needs_holdout && cfg.problem.cv_fraction == 0.0)
        bad("cross-validation style selection needs problem.cv_fraction > 0");
}

Geometry to_geometry(const ProblemConfig& p) {
    Geometry g;
    g.kind = p.geometry;
    g.grid_n = p.n;
    g.n_angles = p.angles;
    g.n_rays = p.rays;
    g.angle_span_deg = p.angle_span_deg > 0.0
                           ? p.angle_span_deg
                           : (p.geometry == GeometryKind::parallel ? 180.0 : 360.0);
    g.source_radius = p.source_radius;
    g.detector_radius = p.detector_radius;
    return g;
}

SummaryRow row_from_record(const std::string& label, const IterationRecord& rec) {
    SummaryRow row;
    row.label = label;
    row.k = rec.k;
    row.mse = rec.mse_vs_truth;
    row.psnr = rec.psnr;
    row.ssim = rec.ssim;
    row.d_err = rec.d_err;
    row.s_err = rec.cv_error;
    return row;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail_at(origin, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_at(origin, line_no, "missing key before '='");
        if (value.empty()) fail_at(origin, line_no, key + ": missing value");
        seen.insert(key);

        if (key == "output.name") {
            cfg.name = value;
        } else if (key == "output.dir") {
            cfg.output_dir = value;
        } else if (key == "output.write_data") {
            cfg.write_data = parse_bool(origin, line_no, key, value);
        } else if (key == "problem.n") {
            const long long n = parse_int(origin, line_no, key, value);
            if (n < 1) fail_at(origin, line_no, "problem.n must be positive");
            cfg.problem.n = static_cast<std::size_t>(n);
        } else if (key == "problem.geometry") {
            cfg.problem.geometry = parse_enum(origin, line_no, key, value, geometry_names());
        } else if (key == "problem.angles") {
            const long long v = parse_int(origin, line_no, key, value);
            if (v < 1) fail_at(origin, line_no, "problem.angles must be positive");
            cfg.problem.angles = static_cast<std::size_t>(v);
        } else if (key == "problem.rays") {
            const long long v = parse_int(origin, line_no, key, value);
            if (v < 1) fail_at(origin, line_no, "problem.rays must be positive");
            cfg.problem.rays = static_cast<std::size_t>(v);
        } else if (key == "problem.angle_span_deg") {
            cfg.problem.angle_span_deg = parse_real(origin, line_no, key, value);
        } else if (key == "problem.source_radius") {
            cfg.problem.source_radius = parse_real(origin, line_no, key, value);
        } else if (key == "problem.detector_radius") {
            cfg.problem.detector_radius = parse_real(origin, line_no, key, value);
        } else if (key == "problem.phantom_lo") {
            cfg.problem.phantom_lo = parse_real(origin, line_no, key, value);
        } else if (key == "problem.phantom_hi") {
            cfg.problem.phantom_hi = parse_real(origin, line_no, key, value);
        } else if (key == "problem.noise_target") {
            cfg.problem.noise_target = parse_real(origin, line_no, key, value);
        } else if (key == "problem.cv_fraction") {
            cfg.problem.cv_fraction = parse_real(origin, line_no, key, value);
        } else if (key == "problem.seed") {
            const long long v = parse_int(origin, line_no, key, value);
            if (v < 0) fail_at(origin, line_no, "problem.seed must be >= 0");
            cfg.problem.seed = static_cast<std::uint64_t>(v);
        } else if (key == "denoiser.kind") {
            cfg.denoiser.kind = parse_enum(origin, line_no, key, value, denoiser_names());
        } else if (key == "denoiser.sigma") {
            cfg.denoiser.sigma = parse_real(origin, line_no, key, value);
        } else if (key == "denoiser.median_window") {
            cfg.denoiser.median_window =
                static_cast<int>(parse_int(origin, line_no, key, value));
        } else if (key == "denoiser.tv_iters") {
            cfg.denoiser.tv_iters = static_cast<int>(parse_int(origin, line_no, key, value));
        } else if (key == "denoiser.rescale_wrap") {
            cfg.denoiser.rescale_wrap = parse_bool(origin, line_no, key, value);
        } else if (key == "solver.algorithm") {
            cfg.algorithm = parse_enum(origin, line_no, key, value, algorithm_names());
        } else if (key == "solver.max_iters") {
            cfg.solver.max_iters = static_cast<int>(parse_int(origin, line_no, key, value));
        } else if (key == "solver.tau") {
            if (value == "auto") {
                cfg.solver.tau = 0.0;
            } else {
                cfg.solver.tau = parse_real(origin, line_no, key, value);
                if (!(cfg.solver.tau > 0.0))
                    fail_at(origin, line_no, "solver.tau must be positive or auto");
            }
        } else if (key == "solver.tau_safety") {
            cfg.solver.tau_safety = parse_real(origin, line_no, key, value);
        } else if (key == "solver.norm_iters") {
            cfg.solver.norm_iters = static_cast<int>(parse_int(origin, line_no, key, value));
        } else if (key == "solver.sigma_update") {
            static const std::map<std::string, SigmaUpdate> table = {
                {"fixed", SigmaUpdate::fixed}, {"scaled", SigmaUpdate::scaled}};
            cfg.solver.sigma_update = parse_enum(origin, line_no, key, value, table);
        } else if (key == "solver.attenuation") {
            static const std::map<std::string, AttenuationMode> table = {
                {"none", AttenuationMode::none},
                {"gamma", AttenuationMode::gamma},
                {"select_alpha", AttenuationMode::select_alpha}};
            cfg.solver.attenuation = parse_enum(origin, line_no, key, value, table);
        } else if (key == "solver.gamma") {
            cfg.solver.gamma = parse_real(origin, line_no, key, value);
        } else if (key == "solver.alpha_grid") {
            cfg.solver.alpha_grid = parse_grid(origin, line_no, key, value);
        } else if (key == "solver.sigma_grid") {
            cfg.solver.sigma_grid = parse_grid(origin, line_no, key, value);
        } else if (key == "solver.rho") {
            cfg.solver.rho = parse_real(origin, line_no, key, value);
        } else if (key == "solver.inner_cg_iters") {
            cfg.solver.inner_cg_iters =
                static_cast<int>(parse_int(origin, line_no, key, value));
        } else if (key == "solver.inner_cg_mode") {
            static const std::map<std::string, CgStopMode> table = {
                {"fixed", CgStopMode::fixed}, {"tolerance", CgStopMode::tolerance}};
            cfg.solver.inner_cg_mode = parse_enum(origin, line_no, key, value, table);
        } else if (key == "solver.inner_cg_tol") {
            cfg.solver.inner_cg_tol = parse_real(origin, line_no, key, value);
        } else if (key == "solver.first_iterate") {
            static const std::map<std::string, FirstIterate> table = {
                {"identity", FirstIterate::identity},
                {"grad_magnitude", FirstIterate::grad_magnitude}};
            cfg.solver.first_iterate = parse_enum(origin, line_no, key, value, table);
        } else if (key == "solver.warm_start_cg") {
            cfg.solver.warm_start_cg = parse_bool(origin, line_no, key, value);
        } else if (key == "solver.store_iterates") {
            cfg.solver.store_iterates = parse_bool(origin, line_no, key, value);
        } else if (key == "selection.criterion") {
            static const std::map<std::string, CriterionKind> table = {
                {"cross_validation", CriterionKind::cross_validation},
                {"discrepancy_principle", CriterionKind::discrepancy_principle}};
            cfg.criterion = parse_enum(origin, line_no, key, value, table);
        } else if (key == "selection.eta") {
            cfg.eta = parse_real(origin, line_no, key, value);
        } else {
            fail_at(origin, line_no, "unknown key '" + key + "'");
        }
    }

    for (const char* required : {"problem.n", "solver.algorithm"})
        if (seen.find(required) == seen.end())
            throw config_error(origin + ": missing required key '" + std::string(required) +
                               "'");
    validate(cfg);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    ExperimentConfig cfg = parse_config(ss.str(), path);
    if (cfg.name == "experiment") {
        // Default the run name to the file stem.
        const std::string stem = std::filesystem::path(path).stem().string();
        if (!stem.empty()) cfg.name = stem;
    }
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    const auto put = [&out](const std::string& key, const std::string& value) {
        out << key << " = " << value << "\n";
    };
    put("output.name", cfg.name);
    put("output.dir", cfg.output_dir);
    put("output.write_data", cfg.write_data ? "true" : "false");
    put("problem.n", std::to_string(cfg.problem.n));
    put("problem.geometry", enum_name(cfg.problem.geometry, geometry_names()));
    put("problem.angles", std::to_string(cfg.problem.angles));
    put("problem.rays", std::to_string(cfg.problem.rays));
    put("problem.angle_span_deg", format_g17(cfg.problem.angle_span_deg));
    put("problem.source_radius", format_g17(cfg.problem.source_radius));
    put("problem.detector_radius", format_g17(cfg.problem.detector_radius));
    put("problem.phantom_lo", format_g17(cfg.problem.phantom_lo));
    put("problem.phantom_hi", format_g17(cfg.problem.phantom_hi));
    put("problem.noise_target", format_g17(cfg.problem.noise_target));
    put("problem.cv_fraction", format_g17(cfg.problem.cv_fraction));
    put("problem.seed", std::to_string(cfg.problem.seed));
    put("denoiser.kind", enum_name(cfg.denoiser.kind, denoiser_names()));
    put("denoiser.sigma", format_g17(cfg.denoiser.sigma));
    put("denoiser.median_window", std::to_string(cfg.denoiser.median_window));
    put("denoiser.tv_iters", std::to_string(cfg.denoiser.tv_iters));
    put("denoiser.rescale_wrap", cfg.denoiser.rescale_wrap ? "true" : "false");
    put("solver.algorithm", enum_name(cfg.algorithm, algorithm_names()));
    put("solver.max_iters", std::to_string(cfg.solver.max_iters));
    put("solver.tau", cfg.solver.tau > 0.0 ? format_g17(cfg.solver.tau) : "auto");
    put("solver.tau_safety", format_g17(cfg.solver.tau_safety));
    put("solver.norm_iters", std::to_string(cfg.solver.norm_iters));
    put("solver.sigma_update",
        cfg.solver.sigma_update == SigmaUpdate::fixed ? "fixed" : "scaled");
    switch (cfg.solver.attenuation) {
        case AttenuationMode::none:
            put("solver.attenuation", "none");
            break;
        case AttenuationMode::gamma:
            put("solver.attenuation", "gamma");
            break;
        case AttenuationMode::select_alpha:
            put("solver.attenuation", "select_alpha");
            break;
    }
    put("solver.gamma", format_g17(cfg.solver.gamma));
    put("solver.alpha_grid", grid_text(cfg.solver.alpha_grid));
    put("solver.sigma_grid", grid_text(cfg.solver.sigma_grid));
    put("solver.rho", format_g17(cfg.solver.rho));
    put("solver.inner_cg_iters", std::to_string(cfg.solver.inner_cg_iters));
    put("solver.inner_cg_mode",
        cfg.solver.inner_cg_mode == CgStopMode::fixed ? "fixed" : "tolerance");
    put("solver.inner_cg_tol", format_g17(cfg.solver.inner_cg_tol));
    put("solver.first_iterate",
        cfg.solver.first_iterate == FirstIterate::identity ? "identity" : "grad_magnitude");
    put("solver.warm_start_cg", cfg.solver.warm_start_cg ? "true" : "false");
    put("solver.store_iterates", cfg.solver.store_iterates ? "true" : "false");
    put("selection.criterion", cfg.criterion == CriterionKind::cross_validation
                                   ? "cross_validation"
                                   : "discrepancy_principle");
    put("selection.eta", format_g17(cfg.eta));
    return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult result;
    result.config = cfg;

    result.phantom =
        shepp_logan(cfg.problem.n, cfg.problem.phantom_lo, cfg.problem.phantom_hi);
    const SparseOperator A = build_radon(to_geometry(cfg.problem));
    const Vector b_clean = A.apply(result.phantom.data);

    Sinogram sino = add_noise(b_clean, cfg.problem.noise_target, cfg.problem.seed);
    sino.n_angles = cfg.problem.angles;
    sino.n_rays = cfg.problem.rays;
    sino = split_cv(std::move(sino), cfg.problem.cv_fraction, cfg.problem.seed + 1);
    result.delta = sino.noise_level_delta;
    result.corridor = default_corridor(result.delta);

    const SparseOperator A_fit = select_rows(A, sino.fit_indices);
    const Vector b_fit = gather(sino.data, sino.fit_indices);
    const Vector b_cv = gather(sino.data, sino.cv_indices);

    SelectionCriterion criterion;
    criterion.kind = cfg.criterion;
    criterion.rows = sino.cv_indices;
    criterion.eta = cfg.eta;
    criterion.delta = result.delta;

    SolverMonitor mon;
    mon.truth = &result.phantom;
    if (!sino.cv_indices.empty()) {
        mon.criterion = &criterion;
        mon.criterion_op = &A;
        mon.criterion_data = &b_cv;
    }

    SolverConfig sc = cfg.solver;
    sc.image_width = cfg.problem.n;
    sc.image_height = cfg.problem.n;
    sc.seed = cfg.problem.seed + 2;

    IterationTrace trace;
    switch (cfg.algorithm) {
        case Algorithm::landweber:
            trace = landweber(A_fit, b_fit, sc, mon);
            break;
        case Algorithm::fbs_pnp:
            trace = fbs_pnp(A_fit, b_fit, cfg.denoiser, sc, mon);
            break;
        case Algorithm::fast_fbs_pnp:
            trace = fast_fbs_pnp(A_fit, b_fit, cfg.denoiser, sc, mon);
            break;
        case Algorithm::admm_pnp:
            trace = admm_pnp(A_fit, b_fit, cfg.denoiser, sc, mon);
            break;
    }
    trace.family_label = classify_family(trace, result.corridor);
    result.trace = std::move(trace);
    result.sinogram = std::move(sino);

    if (!result.trace.records.empty()) {
        result.selected_k = select_stop(result.trace, criterion);
        std::size_t best = 0;
        for (std::size_t i = 1; i < result.trace.records.size(); ++i)
            if (result.trace.records[i].mse_vs_truth <
                result.trace.records[best].mse_vs_truth)
                best = i;
        result.min_mse_k = result.trace.records[best].k;

        result.summary.push_back(row_from_record("final_N", result.trace.records.back()));
        result.summary.push_back(row_from_record(
            "selected_S",
            result.trace.records[static_cast<std::size_t>(result.selected_k - 1)]));
        result.summary.push_back(row_from_record("min_mse", result.trace.records[best]));
    }
    return result;
}

std::string emit_trace_csv(const IterationTrace& trace) {
    std::string out =
        "k,mse,psnr,ssim,d_err,s_err,inner_product,grad_step_norm,denoise_change,alpha,"
        "discrepancy\n";
    for (const IterationRecord& rec : trace.records) {
        out += std::to_string(rec.k);
        out += ',';
        out += format_g17(rec.mse_vs_truth);
        out += ',';
        out += format_g17(rec.psnr);
        out += ',';
        out += format_g17(rec.ssim);
        out += ',';
        out += format_g17(rec.d_err);
        out += ',';
        out += format_g17(rec.cv_error);
        out += ',';
        out += format_g17(rec.inner_product);
        out += ',';
        out += format_g17(rec.grad_step_norm);
        out += ',';
        out += format_g17(rec.denoise_change);
        out += ',';
        out += format_g17(rec.alpha_used);
        out += ',';
        out += format_g17(rec.discrepancy);
        out += '\n';
    }
    return out;
}

std::string emit_summary_csv(const ExperimentResult& result) {
    std::string out = "label,k,mse,psnr,ssim,d_err,s_err\n";
    for (const SummaryRow& row : result.summary) {
        out += row.label;
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += format_g17(row.mse);
        out += ',';
        out += format_g17(row.psnr);
        out += ',';
        out += format_g17(row.ssim);
        out += ',';
        out += format_g17(row.d_err);
        out += ',';
        out += format_g17(row.s_err);
        out += '\n';
    }
    return out;
}

std::string emit_summary_text(const ExperimentResult& result) {
    char buf[256];
    std::string out;
    out += "run: " + result.config.name + "\n";
    out += "algorithm: " + enum_name(result.config.algorithm, algorithm_names()) + "\n";
    out += "iterations: " + std::to_string(result.trace.records.size()) + "\n";
    out += "family: " + to_string(result.trace.family_label) + "\n";
    std::snprintf(buf, sizeof buf, "noise delta: %.6g\n", result.delta);
    out += buf;
    std::snprintf(buf, sizeof buf, "corridor: [%.6g, %.6g]\n", result.corridor.eps1,
                  result.corridor.eps2);
    out += buf;
    out += "selected k: " + std::to_string(result.selected_k) + "\n";
    out += "min-mse k: " + std::to_string(result.min_mse_k) + "\n\n";
    std::snprintf(buf, sizeof buf, "%-12s %6s %12s %12s %12s %12s %12s\n", "row", "k", "mse",
                  "psnr", "ssim", "d_err", "s_err");
    out += buf;
    for (const SummaryRow& row : result.summary) {
        std::snprintf(buf, sizeof buf, "%-12s %6d %12.6g %12.6g %12.6g %12.6g %12.6g\n",
                      row.label.c_str(), row.k, row.mse, row.psnr, row.ssim, row.d_err,
                      row.s_err);
        out += buf;
    }
    return out;
}

std::vector<std::string> write_result_files(const ExperimentResult& result,
                                            const std::string& dir) {
    namespace fs = std::filesystem;
    if (!dir.empty()) fs::create_directories(dir);
    const std::string base = (fs::path(dir) / result.config.name).string();

    std::vector<std::string> written;
    const auto emit = [&written](const std::string& path, const std::string& content) {
        write_text_file(path, content);
        written.push_back(path);
    };
    emit(base + "_trace.csv", emit_trace_csv(result.trace));
    emit(base + "_summary.csv", emit_summary_csv(result));
    emit(base + "_summary.txt", emit_summary_text(result));
    emit(base + "_config.txt", serialize_config(result.config));
    if (result.config.write_data) {
        write_image_csv(result.phantom, base + "_phantom.csv");
        written.push_back(base + "_phantom.csv");
        write_image_raw(result.phantom, base + "_phantom.raw");
        written.push_back(base + "_phantom.raw");
        write_sinogram_csv(result.sinogram, base + "_sinogram.csv");
        written.push_back(base + "_sinogram.csv");
        write_sinogram_raw(result.sinogram, base + "_sinogram.raw");
        written.push_back(base + "_sinogram.raw");
        if (!result.trace.records.empty()) {
            write_image_csv(result.trace.final_z, base + "_recon.csv");
            written.push_back(base + "_recon.csv");
            write_image_raw(result.trace.final_z, base + "_recon.raw");
            written.push_back(base + "_recon.raw");
        }
    }
    return written;
}

}  // namespace pnp
