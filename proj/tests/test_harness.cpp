#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pnpreg/errors.hpp"
#include "pnpreg/experiment.hpp"

using namespace pnp;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = "problem.n = 32\nsolver.algorithm = landweber\n";

ExperimentConfig small_run_config() {
    ExperimentConfig cfg = parse_config(
        "output.name = small\n"
        "problem.n = 32\n"
        "problem.angles = 12\n"
        "problem.rays = 47\n"
        "problem.cv_fraction = 0.02\n"
        "solver.algorithm = landweber\n"
        "solver.max_iters = 10\n");
    return cfg;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("pnpreg_test_") + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
    const ExperimentConfig cfg = parse_config(kMinimal);
    CHECK(cfg.name == "experiment");
    CHECK(cfg.output_dir == ".");
    CHECK_FALSE(cfg.write_data);
    CHECK(cfg.problem.n == 32);
    CHECK(cfg.problem.geometry == GeometryKind::parallel);
    CHECK(cfg.problem.angles == 30);
    CHECK(cfg.problem.rays == 95);
    CHECK(cfg.problem.angle_span_deg == 0.0);
    CHECK(cfg.problem.noise_target == 0.01);
    CHECK(cfg.problem.cv_fraction == 0.01);
    CHECK(cfg.problem.seed == 7);
    CHECK(cfg.denoiser.kind == DenoiserKind::identity);
    CHECK(cfg.denoiser.sigma == 0.0);
    CHECK(cfg.algorithm == Algorithm::landweber);
    CHECK(cfg.solver.max_iters == 100);
    CHECK(cfg.solver.tau <= 0.0);  // auto
    CHECK(cfg.solver.tau_safety == 0.8);
    CHECK(cfg.criterion == CriterionKind::cross_validation);
    CHECK(cfg.eta == 1.1);
}

TEST_CASE("missing required keys are reported by name") {
    CHECK_THROWS_WITH_AS(parse_config("problem.angles = 10\nsolver.algorithm = landweber\n"),
                         doctest::Contains("problem.n"), config_error);
    CHECK_THROWS_WITH_AS(parse_config("problem.n = 32\n"),
                         doctest::Contains("solver.algorithm"), config_error);
}

TEST_CASE("unknown keys are rejected with their line number") {
    const std::string text =
        "problem.n = 32\n"
        "solver.algorithm = landweber\n"
        "solver.taoo = 0.1\n";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("line 3"), config_error);
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("solver.taoo"), config_error);
}

TEST_CASE("malformed values are rejected with their line number") {
    CHECK_THROWS_WITH_AS(parse_config("problem.n = 32\nproblem.angles = banana\n"),
                         doctest::Contains("line 2"), config_error);
    CHECK_THROWS_WITH_AS(parse_config("problem.n = thirty\n"), doctest::Contains("line 1"),
                         config_error);
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "solver.tau = -1\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "problem.noise_target = -0.1\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "solver.gamma = 0\n"),
                    config_error);
    // Enum errors list the accepted spellings.
    CHECK_THROWS_WITH_AS(parse_config("problem.n = 32\nproblem.geometry = spiral\n"),
                         doctest::Contains("parallel"), config_error);
    CHECK_THROWS_WITH_AS(parse_config("problem.n = 32\nsolver.algorithm = sirt\n"),
                         doctest::Contains("landweber"), config_error);
    // Missing '=' and missing value.
    CHECK_THROWS_WITH_AS(parse_config("problem.n 32\n"), doctest::Contains("key = value"),
                         config_error);
    CHECK_THROWS_AS(parse_config("problem.n =\n"), config_error);
}

TEST_CASE("later assignments override earlier ones") {
    const ExperimentConfig cfg = parse_config(
        "problem.n = 32\n"
        "problem.angles = 10\n"
        "solver.algorithm = landweber\n"
        "problem.angles = 24\n");
    CHECK(cfg.problem.angles == 24);
}

TEST_CASE("comments, blank lines and stray whitespace are tolerated") {
    const ExperimentConfig cfg = parse_config(
        "# full-line comment\n"
        "\n"
        "  problem.n   =  32   # trailing comment\n"
        "solver.algorithm = fbs_pnp\r\n"
        "   \t  \n"
        "denoiser.kind = gaussian\n"
        "denoiser.sigma = 0.02\n");
    CHECK(cfg.problem.n == 32);
    CHECK(cfg.algorithm == Algorithm::fbs_pnp);
    CHECK(cfg.denoiser.kind == DenoiserKind::gaussian);
    CHECK(cfg.denoiser.sigma == 0.02);
}

TEST_CASE("serialization is canonical and round-trips byte-identically") {
    ExperimentConfig cfg = small_run_config();
    cfg.solver.tau = 3.0625e-4;
    cfg.solver.alpha_grid = make_linear_grid(0.05, 1.0, 20);
    cfg.denoiser.kind = DenoiserKind::gaussian;
    cfg.denoiser.sigma = 0.02;

    const std::string s1 = serialize_config(cfg);
    const ExperimentConfig back = parse_config(s1, "serialized");
    const std::string s2 = serialize_config(back);
    CHECK(s1 == s2);
    CHECK(back.solver.tau == cfg.solver.tau);
    CHECK(back.solver.alpha_grid.size() == 20);

    // Auto tau serializes as the word, not a number.
    ExperimentConfig auto_tau = parse_config(kMinimal);
    const std::string s3 = serialize_config(auto_tau);
    CHECK(s3.find("solver.tau = auto\n") != std::string::npos);
    CHECK(serialize_config(parse_config(s3, "serialized")) == s3);
}

TEST_CASE("grid values parse from ranges, lists and none") {
    ExperimentConfig cfg = parse_config(
        "problem.n = 32\n"
        "solver.algorithm = fbs_pnp\n"
        "solver.alpha_grid = 0.05:0.05:1\n"
        "solver.sigma_grid = none\n");
    REQUIRE(cfg.solver.alpha_grid.size() == 20);
    CHECK(cfg.solver.alpha_grid.front() == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(cfg.solver.alpha_grid.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cfg.solver.sigma_grid.empty());

    cfg = parse_config(
        "problem.n = 32\n"
        "solver.algorithm = fbs_pnp\n"
        "solver.alpha_grid = 0.3, 0.7, 1.0\n");
    REQUIRE(cfg.solver.alpha_grid.size() == 3);
    CHECK(cfg.solver.alpha_grid[1] == 0.7);

    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = fbs_pnp\n"
                                 "solver.alpha_grid = 1:-0.1:0\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = fbs_pnp\n"
                                 "solver.alpha_grid = 0.5:0.1:0.2\n"),
                    config_error);
}

TEST_CASE("semantic validation rejects inconsistent configs") {
    // Phantom range must be increasing.
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "problem.phantom_lo = 1\nproblem.phantom_hi = 1\n"),
                    config_error);
    // Median window must be odd.
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "denoiser.kind = median\ndenoiser.median_window = 4\n"),
                    config_error);
    // Cross-validation needs a holdout set.
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "problem.cv_fraction = 0\n"),
                    config_error);
    // So do the score-driven solver features.
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = fbs_pnp\n"
                                 "problem.cv_fraction = 0\n"
                                 "selection.criterion = discrepancy_principle\n"
                                 "solver.attenuation = select_alpha\n"),
                    config_error);
    // Run names become file names.
    CHECK_THROWS_AS(parse_config("problem.n = 32\nsolver.algorithm = landweber\n"
                                 "output.name = a/b\n"),
                    config_error);
    // Too coarse a grid for the phantom.
    CHECK_THROWS_AS(parse_config("problem.n = 8\nsolver.algorithm = landweber\n"),
                    config_error);
    // The discrepancy principle alone is fine without a holdout.
    const ExperimentConfig ok = parse_config(
        "problem.n = 32\nsolver.algorithm = landweber\n"
        "problem.cv_fraction = 0\nselection.criterion = discrepancy_principle\n");
    CHECK(ok.criterion == CriterionKind::discrepancy_principle);
}

TEST_CASE("config files default the run name to the file stem") {
    TempDir tmp("cfgfile");
    const fs::path path = tmp.path / "desk_run.cfg";
    {
        std::ofstream f(path);
        f << kMinimal;
    }
    CHECK(parse_config_file(path.string()).name == "desk_run");

    const fs::path named = tmp.path / "other.cfg";
    {
        std::ofstream f(named);
        f << "output.name = custom\n" << kMinimal;
    }
    CHECK(parse_config_file(named.string()).name == "custom");

    CHECK_THROWS_AS(parse_config_file((tmp.path / "absent.cfg").string()), config_error);
}

TEST_CASE("experiment run produces a consistent trace and summary") {
    const ExperimentConfig cfg = small_run_config();
    const ExperimentResult res = run_experiment(cfg);

    REQUIRE(res.trace.records.size() == 10);
    REQUIRE(res.summary.size() == 3);
    CHECK(res.summary[0].label == "final_N");
    CHECK(res.summary[1].label == "selected_S");
    CHECK(res.summary[2].label == "min_mse");
    CHECK(res.summary[0].k == 10);

    // The selected row restates the trace record at the selected iteration.
    const IterationRecord& sel = res.trace.records[std::size_t(res.selected_k - 1)];
    CHECK(res.summary[1].k == res.selected_k);
    CHECK(res.summary[1].mse == sel.mse_vs_truth);
    CHECK(res.summary[1].psnr == sel.psnr);
    CHECK(res.summary[1].ssim == sel.ssim);
    CHECK(res.summary[1].d_err == sel.d_err);
    CHECK(res.summary[1].s_err == sel.cv_error);

    // min_mse really is the argmin over the trace.
    for (const IterationRecord& rec : res.trace.records)
        CHECK(res.summary[2].mse <= rec.mse_vs_truth);

    // No attenuation: every recorded alpha is exactly 1.
    for (const IterationRecord& rec : res.trace.records) CHECK(rec.alpha_used == 1.0);

    // Realized noise is 1% of the clean sinogram by construction.
    CHECK(res.delta > 0.0);
    CHECK(res.corridor.eps1 == res.delta * res.delta);
}

TEST_CASE("trace csv has the pinned header and round-trips its values") {
    const ExperimentResult res = run_experiment(small_run_config());
    const std::string csv = emit_trace_csv(res.trace);
    const std::vector<std::string> lines = split_lines(csv);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] ==
          "k,mse,psnr,ssim,d_err,s_err,inner_product,grad_step_norm,denoise_change,alpha,"
          "discrepancy");
    CHECK(csv.find('\r') == std::string::npos);

    // Every row carries 11 comma-separated fields; the mse field of the first
    // row parses back to the recorded double exactly.
    for (std::size_t i = 1; i < lines.size(); ++i)
        CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 10);
    const std::string row1 = lines[1];
    const auto c1 = row1.find(',');
    const auto c2 = row1.find(',', c1 + 1);
    CHECK(std::strtod(row1.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr) ==
          res.trace.records[0].mse_vs_truth);

    CHECK(emit_summary_csv(res).rfind("label,k,mse,psnr,ssim,d_err,s_err\n", 0) == 0);
}

TEST_CASE("experiment outputs are deterministic across runs") {
    const ExperimentConfig cfg = small_run_config();
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    CHECK(emit_trace_csv(a.trace) == emit_trace_csv(b.trace));
    CHECK(emit_summary_csv(a) == emit_summary_csv(b));
    CHECK(emit_summary_text(a) == emit_summary_text(b));

    // A different seed changes the noise realization and hence the trace.
    ExperimentConfig other = cfg;
    other.problem.seed = 8;
    CHECK(emit_trace_csv(run_experiment(other).trace) != emit_trace_csv(a.trace));
}

TEST_CASE("noiseless discrepancy run keeps iterating to the end") {
    ExperimentConfig cfg = small_run_config();
    cfg.problem.noise_target = 0.0;
    cfg.problem.cv_fraction = 0.0;
    cfg.criterion = CriterionKind::discrepancy_principle;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.delta == 0.0);
    CHECK(res.corridor.eps2 == 0.0);
    // Threshold eta * 0 is never reached, so selection falls to the last k.
    CHECK(res.selected_k == 10);
    // Without a holdout the criterion column is not populated.
    for (const IterationRecord& rec : res.trace.records)
        CHECK(std::isnan(rec.cv_error));
}

TEST_CASE("result files land next to each other and honor write_data") {
    TempDir tmp("results");
    ExperimentConfig cfg = small_run_config();
    const ExperimentResult res = run_experiment(cfg);

    const std::vector<std::string> basic = write_result_files(res, tmp.path.string());
    REQUIRE(basic.size() == 4);
    const char* suffixes[] = {"_trace.csv", "_summary.csv", "_summary.txt", "_config.txt"};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(basic[i].find(std::string("small") + suffixes[i]) != std::string::npos);
        CHECK(fs::file_size(basic[i]) > 0);
    }

    ExperimentConfig full = cfg;
    full.write_data = true;
    const ExperimentResult res2 = run_experiment(full);
    const std::vector<std::string> all = write_result_files(res2, tmp.path.string());
    CHECK(all.size() == 10);  // adds phantom, sinogram and recon as csv + raw
    for (const std::string& path : all) CHECK(fs::exists(path));

    // The emitted config reproduces the run configuration.
    const ExperimentConfig back = parse_config_file(basic[3]);
    CHECK(back.problem.n == cfg.problem.n);
    CHECK(back.solver.max_iters == cfg.solver.max_iters);
}

TEST_CASE("presets parse, validate and round-trip") {
    const std::vector<std::string>& names = preset_names();
    REQUIRE(names.size() == 4);
    for (const std::string& name : names) {
        CAPTURE(name);
        const ExperimentConfig cfg = preset_config(name);
        CHECK(cfg.name == name);
        CHECK_FALSE(preset_description(name).empty());
        const std::string text = serialize_config(cfg);
        CHECK(serialize_config(parse_config(text, name)) == text);
    }
    CHECK_THROWS_AS(preset_config("nonexistent"), config_error);
    CHECK_THROWS_AS(preset_description("nonexistent"), config_error);
}
